#include "szeta/critical_line.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "szeta/error.hpp"

namespace szeta {

namespace {

// B_{2k}/(2k)!, k = 1..6
constexpr std::array<double, 6> kEulerMaclaurin = {
    1.0 / 12.0,         -1.0 / 720.0,        1.0 / 30240.0,
    -1.0 / 1209600.0,   1.0 / 47900160.0,    -691.0 / 1307674368000.0};

// (e^w - 1)/w
cplx phi1(cplx w) {
  if (std::abs(w) > 1e-3) return (std::exp(w) - 1.0) / w;
  cplx term = 1.0, sum = 1.0;
  for (int k = 2; k < 10; ++k) {
    term *= w / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

double wrap(double x) { return std::remainder(x, 2.0 * kPi); }

}  // namespace

cplx em_tail(cplx s, double x, bool drop_pole) {
  const double lx = std::log(x);
  const cplx xs = std::exp(-s * lx);
  cplx head;
  if (drop_pole) {
    head = -lx * phi1((1.0 - s) * lx);
  } else {
    if (s == cplx(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
    head = x * xs / (s - 1.0);
  }
  cplx sum = head + 0.5 * xs;
  cplx poch = s;
  cplx xp = xs / x;
  for (std::size_t k = 0; k < kEulerMaclaurin.size(); ++k) {
    sum += kEulerMaclaurin[k] * poch * xp;
    const double j = 2.0 * static_cast<double>(k) + 1.0;
    poch *= (s + j) * (s + j + 1.0);
    xp /= x * x;
  }
  return sum;
}

cplx zeta(cplx s) {
  if (s == cplx(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
  const auto n = static_cast<std::uint64_t>(std::max(20.0, std::ceil(2.0 * std::abs(s))));
  cplx sum = 0.0;
  for (std::uint64_t k = 1; k < n; ++k) sum += std::exp(-s * std::log(static_cast<double>(k)));
  return sum + em_tail(s, static_cast<double>(n));
}

cplx l_value(const LFunctionDescriptor& d, cplx s) {
  if (d.kind == LKind::Zeta) return zeta(s);
  if (d.kind != LKind::Dirichlet || !d.character) {
    throw PreconditionError("l_value: no evaluator for this descriptor");
  }
  const auto& chi = *d.character;
  const std::uint64_t q = chi.modulus();
  const auto k = static_cast<std::uint64_t>(std::max(10.0, std::ceil(std::abs(s))));
  cplx head = 0.0;
  for (std::uint64_t n = 1; n <= k * q; ++n) {
    const cplx c = chi(n);
    if (c == cplx(0.0, 0.0)) continue;
    head += c * std::exp(-s * std::log(static_cast<double>(n)));
  }
  cplx tail = 0.0;
  for (std::uint64_t a = 1; a <= q; ++a) {
    const cplx c = chi(a);
    if (c == cplx(0.0, 0.0)) continue;
    tail += c * em_tail(s, static_cast<double>(k) + static_cast<double>(a) / static_cast<double>(q), true);
  }
  return head + std::exp(-s * std::log(static_cast<double>(q))) * tail;
}

double gamma_phase(const LFunctionDescriptor& d, double t) {
  double out = 0.5 * t * std::log(static_cast<double>(d.conductor));
  for (const auto& mu : d.spectral) out += log_gamma_r(cplx(0.5, t) + mu).imag();
  return out;
}

double hardy_z(const LFunctionDescriptor& d, double t) {
  const cplx rot = std::sqrt(std::conj(d.root_number_or_throw()));
  const double ph = gamma_phase(d, t);
  const cplx v = rot * cplx(std::cos(ph), std::sin(ph)) * l_value(d, cplx(0.5, t));
  if (std::abs(v.imag()) > 1e-8 * std::max(std::abs(v.real()), 1.0)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "hardy_z: imaginary residue %.3g at t = %.10g", v.imag(), t);
    throw PrecisionError(buf);
  }
  return v.real();
}

namespace {

// Continuous change of arg f along [0, 1] with steps bounded by `max_step`.
// Each accepted step has |increment| < pi/4 and agrees with the sum over its
// two halves.
template <class F>
double track_phase(F&& f, double max_step, std::size_t& points) {
  double u = 0.0;
  double h = max_step;
  cplx v = f(0.0);
  ++points;
  double total = 0.0;
  while (u < 1.0) {
    const double step = std::min(h, 1.0 - u);
    const cplx vn = f(u + step);
    const cplx vm = f(u + 0.5 * step);
    points += 2;
    const double dphi = std::arg(vn / v);
    const double d1 = std::arg(vm / v);
    const double d2 = std::arg(vn / vm);
    if (std::abs(dphi) > kPi / 4.0 || std::abs(d1 + d2 - dphi) > 1e-9) {
      h = 0.5 * step;
      if (h < 1e-14) throw PrecisionError("argument tracking: step refinement exhausted");
      continue;
    }
    total += dphi;
    u += step;
    v = vn;
    h = std::min(max_step, 2.0 * step);
  }
  return total;
}

ArgumentTrace argument_s_raw(const LFunctionDescriptor& d, double t) {
  ArgumentTrace out;
  out.t = t;
  if (t == 0.0) return out;
  // |L(2 + it) - 1| <= zeta(2) - 1 < 1: the principal value is the
  // continuous one on the vertical leg.
  const cplx start = l_value(d, cplx(2.0, t));
  const double vertical = std::arg(start);
  const double horizontal = track_phase(
      [&](double u) { return l_value(d, cplx(2.0 - 1.5 * u, t)); }, 1.0 / 8.0, out.path_points);
  out.value = (vertical + horizontal) / kPi;
  out.budget.absolute = 1e-10 * static_cast<double>(out.path_points);
  out.budget.source = ErrorBudget::Source::SeriesTruncation;
  return out;
}

}  // namespace

ArgumentTrace argument_s(const LFunctionDescriptor& d, double t) {
  if (t == 0.0) return argument_s_raw(d, t);
  if (std::abs(l_value(d, cplx(0.5, t))) < 1e-7) {
    constexpr double eps = 1e-5;
    const auto lo = argument_s_raw(d, t - eps);
    const auto hi = argument_s_raw(d, t + eps);
    ArgumentTrace out;
    out.t = t;
    out.value = 0.5 * (lo.value + hi.value);
    out.path_points = lo.path_points + hi.path_points;
    out.budget = lo.budget + hi.budget;
    out.at_zero = true;
    return out;
  }
  return argument_s_raw(d, t);
}

double smooth_count(const LFunctionDescriptor& d, double t) {
  const double at = std::abs(t);
  return (gamma_phase(d, at) - gamma_phase(d, -at)) / kPi + 2.0 * d.pole_order;
}

double counting_formula(const LFunctionDescriptor& d, double t) {
  const double at = std::abs(t);
  const double s = argument_s(d, at).value;
  const double s_dual = d.self_dual ? s : -argument_s(d, -at).value;
  return smooth_count(d, at) + s + s_dual;
}

double contour_count(const LFunctionDescriptor& d, double lo, double hi) {
  const std::array<cplx, 5> corners = {cplx(-0.5, lo), cplx(1.5, lo), cplx(1.5, hi),
                                       cplx(-0.5, hi), cplx(-0.5, lo)};
  std::size_t points = 0;
  double total = 0.0;
  for (std::size_t e = 0; e + 1 < corners.size(); ++e) {
    const cplx a = corners[e];
    const cplx b = corners[e + 1];
    const double len = std::abs(b - a);
    total += track_phase(
        [&](double u) {
          const cplx s = a + u * (b - a);
          // Work with log Lambda so huge gamma factors never overflow; only
          // the phase of the ratio is used.
          const cplx lg = log_gamma_factor(d, s);
          const cplx lv = l_value(d, s);
          const double ph = wrap(lg.imag() + std::arg(lv));
          return cplx(std::cos(ph), std::sin(ph));
        },
        std::min(1.0, 0.25 / len), points);
  }
  return total / (2.0 * kPi);
}

std::vector<double> ZeroSet::signed_ordinates(double T) const {
  std::vector<double> out;
  if (full_line) {
    for (double g : ordinates) {
      if (std::abs(g) <= T) out.push_back(g);
    }
    return out;
  }
  for (auto it = ordinates.rbegin(); it != ordinates.rend(); ++it) {
    if (*it <= T) out.push_back(-*it);
  }
  for (double g : ordinates) {
    if (g <= T) out.push_back(g);
  }
  return out;
}

namespace {

double local_step(const LFunctionDescriptor& d, double t) {
  return 0.05 * 2.0 * kPi / std::log(analytic_conductor(d, t));
}

// Zeros of Z on sign * [a, b], returned as |gamma|.
std::vector<double> scan_side(const LFunctionDescriptor& d, double a, double b, int sign,
                              double factor, double tol) {
  std::vector<double> out;
  auto z = [&](double u) { return hardy_z(d, sign * u); };
  double u = a;
  double zu = z(u);
  while (u < b) {
    const double un = std::min(b, u + factor * local_step(d, u));
    const double zn = z(un);
    if (zu == 0.0) {
      if (u > 0.0) out.push_back(u);
    } else if (zu * zn < 0.0) {
      std::uintmax_t iters = 200;
      auto stop = [tol](double x, double y) { return std::abs(y - x) <= tol; };
      const auto [lo, hi] =
          boost::math::tools::toms748_solve(z, u, un, zu, zn, stop, iters);
      out.push_back(0.5 * (lo + hi));
    }
    u = un;
    zu = zn;
  }
  return out;
}

double count_below(const std::vector<double>& v, double x) {
  return static_cast<double>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
}

}  // namespace

ZeroSet find_zeros(const LFunctionDescriptor& d, double T, const ZeroSearchOptions& opt) {
  const double cap = opt.height_cap > 0.0 ? opt.height_cap : (d.kind == LKind::Zeta ? 1e4 : 1e3);
  if (!(T >= 0.0)) throw PreconditionError("find_zeros: height must be nonnegative");
  if (T > cap) throw CapacityError("find_zeros: height exceeds the configured cap");
  d.root_number_or_throw();

  ZeroSet zs;
  zs.descriptor_id = descriptor_hash(d);
  zs.full_line = !d.self_dual;
  zs.precision = opt.refine_tol;
  zs.provenance = Provenance::Computed;

  std::vector<int> sides = {1};
  if (!d.self_dual) sides.push_back(-1);
  std::vector<std::vector<double>> found(sides.size());

  double c_prev = 0.0;
  while (c_prev < T) {
    const double c = std::min(T, c_prev + opt.block);
    bool ok = false;
    std::vector<std::vector<double>> block(sides.size());
    for (unsigned halving = 0; halving <= opt.max_halvings && !ok; ++halving) {
      const double factor = std::ldexp(1.0, -static_cast<int>(halving));
      for (std::size_t i = 0; i < sides.size(); ++i) {
        block[i] = scan_side(d, c_prev, c, sides[i], factor, opt.refine_tol);
      }
      std::vector<double> all;
      for (std::size_t i = 0; i < sides.size(); ++i) {
        all.insert(all.end(), found[i].begin(), found[i].end());
        all.insert(all.end(), block[i].begin(), block[i].end());
      }
      std::sort(all.begin(), all.end());
      // Checkpoint in a zero-free gap near c.
      double cc = c;
      const auto it = std::lower_bound(all.begin(), all.end(), c - 0.01);
      if (it != all.end() && std::abs(*it - c) < 0.01) {
        const double below = it == all.begin() ? c_prev : *(it - 1);
        cc = 0.5 * (below + *it);
      }
      if (cc <= 0.0) {
        ok = true;
        break;
      }
      const double counted = (d.self_dual ? 2.0 : 1.0) * count_below(all, cc);
      const double predicted = counting_formula(d, cc);
      ok = std::abs(predicted - counted) < 0.25;
    }
    for (std::size_t i = 0; i < sides.size(); ++i) {
      found[i].insert(found[i].end(), block[i].begin(), block[i].end());
    }
    if (!ok) {
      zs.completeness_uncertain = true;
      break;
    }
    zs.complete_to = c;
    c_prev = c;
  }

  if (d.self_dual) {
    zs.ordinates = found[0];
  } else {
    for (auto it = found[1].rbegin(); it != found[1].rend(); ++it) zs.ordinates.push_back(-*it);
    zs.ordinates.insert(zs.ordinates.end(), found[0].begin(), found[0].end());
  }
  return zs;
}

double count_zeros(const ZeroSet& zs, double t) {
  const double at = std::abs(t);
  if (at > zs.complete_to + 1e-12) {
    throw CompletenessError("count_zeros: height exceeds the zero set's completeness");
  }
  double n = 0.0;
  for (double g : zs.ordinates) {
    const double a = std::abs(g);
    if (a < at - zs.precision) {
      n += 1.0;
    } else if (a <= at + zs.precision) {
      n += 0.5;
    }
  }
  return zs.full_line ? n : 2.0 * n;
}

double count_positive(const ZeroSet& zs, double t) {
  if (t > zs.complete_to + 1e-12) {
    throw CompletenessError("count_positive: height exceeds the zero set's completeness");
  }
  double n = 0.0;
  for (double g : zs.ordinates) {
    if (g <= 0.0) continue;
    if (g < t - zs.precision) {
      n += 1.0;
    } else if (g <= t + zs.precision) {
      n += 0.5;
    }
  }
  return n;
}

ZeroSet ingest_zeros_text(const std::string& text, const LFunctionDescriptor& d,
                          bool cross_check) {
  ZeroSet zs;
  zs.descriptor_id = descriptor_hash(d);
  zs.full_line = !d.self_dual;
  zs.provenance = Provenance::Ingested;
  zs.precision = 0.0;

  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const auto b = raw.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = raw.find_last_not_of(" \t\r");
    const std::string tok = raw.substr(b, e - b + 1);
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || !std::isfinite(v)) {
      throw ParseError("zero table: not a number: '" + tok + "'", line);
    }
    if (!zs.ordinates.empty() && !(v > zs.ordinates.back())) {
      throw ParseError("zero table: ordinates must be strictly ascending", line);
    }
    if (d.self_dual && v <= 0.0) {
      throw ParseError("zero table: self-dual tables hold positive ordinates only", line);
    }
    const auto dot = tok.find('.');
    const double decimals =
        dot == std::string::npos ? 0.0 : static_cast<double>(tok.size() - dot - 1);
    zs.precision = std::max(zs.precision, 0.5 * std::pow(10.0, -decimals));
    zs.ordinates.push_back(v);
  }
  if (zs.ordinates.empty()) {
    zs.precision = 1e-9;
    return zs;
  }
  zs.complete_to = zs.full_line ? std::min(-zs.ordinates.front(), zs.ordinates.back())
                                 : zs.ordinates.back();
  zs.complete_to = std::max(zs.complete_to, 0.0);

  if (cross_check) {
    const std::size_t n = std::min<std::size_t>(20, zs.ordinates.size());
    double reach = 0.0;
    for (std::size_t i = 0; i < n; ++i) reach = std::max(reach, std::abs(zs.ordinates[i]));
    const auto computed = find_zeros(d, reach + 0.5);
    for (std::size_t i = 0; i < n; ++i) {
      const double g = zs.ordinates[i];
      double best = INFINITY;
      if (!zs.full_line) {
        if (i < computed.ordinates.size()) best = std::abs(computed.ordinates[i] - g);
      } else {
        for (double c : computed.ordinates) best = std::min(best, std::abs(c - g));
      }
      if (!(best <= 1e-4)) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "zero table: entry %zu (%.10g) does not match the computed zero", i + 1, g);
        throw MismatchError(buf);
      }
    }
  }
  return zs;
}

ZeroSet ingest_zeros(const std::filesystem::path& path, const LFunctionDescriptor& d) {
  std::ifstream in(path);
  if (!in) throw ParseError("zero table: cannot open " + path.string(), 0);
  std::stringstream buf;
  buf << in.rdbuf();
  return ingest_zeros_text(buf.str(), d);
}

void write_zero_cache(const std::filesystem::path& path, const ZeroSet& zs) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write zero cache " + path.string());
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.17g", zs.complete_to);
  out << "# descriptor=" << zs.descriptor_id << " complete_to=" << buf
      << " provenance=" << (zs.provenance == Provenance::Computed ? "computed" : "ingested")
      << " full_line=" << (zs.full_line ? 1 : 0)
      << " uncertain=" << (zs.completeness_uncertain ? 1 : 0) << "\n";
  out << "index,ordinate,precision\n";
  for (std::size_t i = 0; i < zs.ordinates.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.3g\n", i + 1, zs.ordinates[i], zs.precision);
    out << buf;
  }
}

std::optional<ZeroSet> read_zero_cache(const std::filesystem::path& path,
                                       const LFunctionDescriptor& d) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string tok;
  ZeroSet zs;
  hs >> tok;
  if (tok != "#") throw ParseError("zero cache: missing header", 1);
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    if (key == "descriptor") zs.descriptor_id = val;
    if (key == "complete_to") zs.complete_to = std::strtod(val.c_str(), nullptr);
    if (key == "provenance") zs.provenance = val == "ingested" ? Provenance::Ingested : Provenance::Computed;
    if (key == "full_line") zs.full_line = val == "1";
    if (key == "uncertain") zs.completeness_uncertain = val == "1";
  }
  if (zs.descriptor_id != descriptor_hash(d)) return std::nullopt;
  std::string line;
  std::size_t lineno = 1;
  std::getline(in, line);
  ++lineno;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw ParseError("zero cache: expected index,ordinate,precision", lineno);
    }
    zs.ordinates.push_back(std::strtod(line.c_str() + c1 + 1, nullptr));
    zs.precision = std::strtod(line.c_str() + c2 + 1, nullptr);
  }
  return zs;
}

std::filesystem::path zero_cache_path(const std::filesystem::path& dir,
                                      const LFunctionDescriptor& d) {
  return dir / ("zeros-" + descriptor_hash(d) + ".csv");
}

ZeroSet load_or_find_zeros(const LFunctionDescriptor& d, double T,
                           const std::filesystem::path& dir) {
  if (!dir.empty()) {
    if (auto zs = read_zero_cache(zero_cache_path(dir, d), d); zs && zs->complete_to >= T) {
      return *zs;
    }
  }
  ZeroSet zs = find_zeros(d, T);
  if (!dir.empty()) {
    std::filesystem::create_directories(dir);
    write_zero_cache(zero_cache_path(dir, d), zs);
  }
  return zs;
}

}  // namespace szeta
