#include "szeta/explicit_formula.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <mutex>
#include <sstream>

#include "szeta/error.hpp"
#include "szeta/quadrature.hpp"

namespace szeta {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

cplx unit_phase(double turns) {
  // exp(2 pi i turns), reduced first so large arguments keep their accuracy.
  const double r = turns - std::round(turns);
  return {std::cos(2.0 * kPi * r), std::sin(2.0 * kPi * r)};
}

// max over v >= T of 21 log v - pi ((v - c)/w)^2
double gauss_log_power_max(double T, double c, double w, double power) {
  auto g = [&](double v) { return power / v - 2.0 * kPi * (v - c) / (w * w); };
  double v = T;
  if (g(T) > 0.0) {
    double lo = T, hi = std::max(T, c) + power * w + 1.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) > 0.0 ? lo : hi) = mid;
    }
    v = 0.5 * (lo + hi);
  }
  const double z = (v - c) / w;
  return power * std::log(v) - kPi * z * z;
}

}  // namespace

TestFunction gaussian_test(double center, double width) {
  if (!(width > 0.0) || !std::isfinite(width) || !std::isfinite(center)) {
    throw PreconditionError("gaussian_test: width must be positive");
  }
  TestFunction h;
  char buf[96];
  std::snprintf(buf, sizeof buf, "gaussian(c=%g;w=%g)", center, width);
  h.name = buf;
  h.eval = [center, width](cplx z) {
    const cplx u = (z - center) / width;
    return std::exp(-kPi * u * u);
  };
  h.fourier = [center, width](double xi) {
    return width * std::exp(-kPi * width * width * xi * xi) * unit_phase(-center * xi);
  };
  h.fourier_envelope = [width](double xi) { return width * std::exp(-kPi * width * width * xi * xi); };
  h.core_radius = std::abs(center) + 12.0 * width;
  h.breaks = {center};
  h.max_piece = 0.5 * width;
  h.decay = [center, width](double T) {
    constexpr double delta = 20.0;
    if (!(T > 0.0)) return std::pair<double, double>{kInf, delta};
    const double la = std::max(gauss_log_power_max(T, center, width, 1.0 + delta),
                               gauss_log_power_max(T, -center, width, 1.0 + delta));
    return std::pair<double, double>{std::exp(la), delta};
  };
  h.strip_width = kInf;
  return h;
}

TestFunction selberg_test(const SelbergSystem& sys) {
  TestFunction h;
  const double t = sys.half_length();
  const double d = sys.type_param();
  const double sgn = sign_of(sys.sign());
  char buf[96];
  std::snprintf(buf, sizeof buf, "selberg%s(t=%g;delta=%g)", sgn > 0 ? "+" : "-", t, d);
  h.name = buf;
  h.eval = [sys](cplx z) { return sys(z); };
  h.fourier = [sys](double xi) { return cplx(sys.fourier(xi), 0.0); };
  h.band_limit = d;
  h.core_radius = t + 2000.0 / d;
  // Far out R = (1/2){sin^2(pi d(x+t))/(pi d(x+t))^2 + sin^2(pi d(x-t))/(pi d(x-t))^2}
  // up to O(x^{-3}); sin^2 averages to 1/2.
  h.tail_mean = [t, d, sgn](double u) {
    const double a = std::abs(u);
    return sgn / (4.0 * kPi * kPi * d * d) * (1.0 / ((a + t) * (a + t)) + 1.0 / ((a - t) * (a - t)));
  };
  h.breaks = {-t, t};
  h.max_piece = std::min(0.5, 0.25 / d);
  h.decay = [t, d](double T) {
    if (!(d * (T - t) >= 1.0)) return std::pair<double, double>{kInf, 1.0};
    const double r = T / (T - t);
    return std::pair<double, double>{kBeurlingTailConstant / (d * d) * r * r, 1.0};
  };
  h.strip_width = kInf;
  return h;
}

TestFunction shifted(const TestFunction& h, double tau) {
  if (tau == 0.0) return h;
  TestFunction out = h;
  char buf[64];
  std::snprintf(buf, sizeof buf, "@%g", tau);
  out.name = h.name + buf;
  auto e = h.eval;
  out.eval = [e, tau](cplx z) { return e(z - tau); };
  auto f = h.fourier;
  out.fourier = [f, tau](double xi) { return f(xi) * unit_phase(-tau * xi); };
  out.core_radius = h.core_radius + std::abs(tau);
  if (h.tail_mean) {
    auto tm = h.tail_mean;
    out.tail_mean = [tm, tau](double u) { return tm(u - tau); };
  }
  for (auto& b : out.breaks) b += tau;
  if (h.decay) {
    auto dec = h.decay;
    out.decay = [dec, tau](double T) {
      const double a = std::abs(tau);
      if (!(T > a)) return std::pair<double, double>{kInf, 1.0};
      auto [A, delta] = dec(T - a);
      return std::pair<double, double>{A * std::pow(T / (T - a), 1.0 + delta), delta};
    };
  }
  return out;
}

TestFunction combine(double a, const TestFunction& h1, double b, const TestFunction& h2) {
  TestFunction out;
  out.name = h1.name + "+" + h2.name;
  auto e1 = h1.eval, e2 = h2.eval;
  out.eval = [=](cplx z) { return a * e1(z) + b * e2(z); };
  auto f1 = h1.fourier, f2 = h2.fourier;
  out.fourier = [=](double xi) { return a * f1(xi) + b * f2(xi); };
  if (h1.band_limit && h2.band_limit) out.band_limit = std::max(*h1.band_limit, *h2.band_limit);
  if (!out.band_limit) {
    auto env = [](const TestFunction& h) -> std::function<double(double)> {
      if (h.band_limit) {
        const double bl = *h.band_limit;
        return [bl](double xi) { return xi >= bl ? 0.0 : kInf; };
      }
      return h.fourier_envelope;
    };
    auto v1 = env(h1), v2 = env(h2);
    if (v1 && v2) out.fourier_envelope = [=](double xi) { return std::abs(a) * v1(xi) + std::abs(b) * v2(xi); };
  }
  out.core_radius = std::max(h1.core_radius, h2.core_radius);
  if (h1.tail_mean || h2.tail_mean) {
    auto t1 = h1.tail_mean, t2 = h2.tail_mean;
    out.tail_mean = [=](double u) { return (t1 ? a * t1(u) : 0.0) + (t2 ? b * t2(u) : 0.0); };
  }
  out.breaks = h1.breaks;
  out.breaks.insert(out.breaks.end(), h2.breaks.begin(), h2.breaks.end());
  out.max_piece = std::min(h1.max_piece, h2.max_piece);
  if (h1.decay && h2.decay) {
    auto d1 = h1.decay, d2 = h2.decay;
    out.decay = [=](double T) {
      auto [A1, x1] = d1(T);
      auto [A2, x2] = d2(T);
      const double delta = std::min(x1, x2);
      const double A = std::abs(a) * A1 * std::pow(T, delta - x1) + std::abs(b) * A2 * std::pow(T, delta - x2);
      return std::pair<double, double>{A, delta};
    };
  }
  out.strip_width = std::min(h1.strip_width, h2.strip_width);
  return out;
}

double fourier_consistency(const TestFunction& h, double xi) {
  const double R = h.core_radius;
  quad::Options opt;
  opt.max_piece = xi == 0.0 ? h.max_piece : std::min(h.max_piece, 0.125 / std::abs(xi));
  opt.relative_tol = 1e-12;
  opt.absolute_tol = 1e-10;
  const auto body = quad::integrate_complex(
      [&](double u) { return h.eval(cplx(u, 0.0)) * unit_phase(-u * xi); }, -R, R, opt, h.breaks);
  cplx tail = 0.0;
  if (h.tail_mean) {
    if (xi == 0.0) {
      quad::Options o2;
      o2.max_piece = 1.0;
      o2.absolute_tol = 1e-14;
      tail = quad::integrate(
                 [&](double s) {
                   const double u = R * std::exp(s);
                   return u * (h.tail_mean(u) + h.tail_mean(-u));
                 },
                 0.0, 60.0, o2)
                 .value;
    } else {
      const cplx i2pxi(0.0, 2.0 * kPi * xi);
      tail = (h.tail_mean(R) * unit_phase(-R * xi) - h.tail_mean(-R) * unit_phase(R * xi)) / i2pxi;
    }
  }
  return std::abs(body.value + tail - h.fourier(xi));
}

std::shared_ptr<const MangoldtTable> shared_mangoldt(std::uint64_t limit, std::uint64_t cap) {
  static std::mutex mu;
  static std::shared_ptr<const MangoldtTable> table;
  std::lock_guard<std::mutex> lock(mu);
  if (!table || table->limit() < limit) {
    const std::uint64_t chunk = 1ULL << 20;
    const std::uint64_t want = std::max<std::uint64_t>(2, (limit + chunk - 1) / chunk * chunk);
    table = std::make_shared<const MangoldtTable>(std::max(limit, std::min(want, cap)), cap);
  }
  return table;
}

namespace {

double re_log_deriv(const LFunctionDescriptor& d, double u) {
  return gamma_factor_logderiv(d, cplx(0.5, u)).real();
}

quad::ComplexResult arch_piece(const LFunctionDescriptor& d, const TestFunction& h, double a,
                               double b) {
  quad::Options opt;
  opt.max_piece = h.max_piece;
  opt.relative_tol = 1e-12;
  opt.absolute_tol = 1e-10;
  auto r = quad::integrate_complex(
      [&](double u) { return h.eval(cplx(u, 0.0)) * re_log_deriv(d, u); }, a, b, opt, h.breaks);
  r.value /= kPi;
  r.error /= kPi;
  return r;
}

// (1/pi) int_{|u| > a} tail_mean(u) Re L'/L du, with u = a e^s.
quad::Result model_tail(const LFunctionDescriptor& d, const TestFunction& h, double a) {
  if (!h.tail_mean) return {};
  quad::Options opt;
  opt.max_piece = 1.0;
  opt.relative_tol = 1e-12;
  opt.absolute_tol = 1e-14;
  auto r = quad::integrate(
      [&](double s) {
        const double u = a * std::exp(s);
        return u * (h.tail_mean(u) * re_log_deriv(d, u) + h.tail_mean(-u) * re_log_deriv(d, -u));
      },
      0.0, 80.0, opt);
  r.value /= kPi;
  r.error /= kPi;
  return r;
}

// Bound on (1/2pi) sum_{n > X} n^{-1/2} |Lambda_pi(n)| (|h^(xi_n)| + |h^(-xi_n)|) using
// psi(x) <= 1.04 x and a nonincreasing envelope.
double prime_tail_bound(const LFunctionDescriptor& d, const TestFunction& h, double X) {
  const double th = d.theta;
  auto f = [&](double x) {
    return std::pow(x, th - 0.5) * h.fourier_envelope(std::log(x) / (2.0 * kPi));
  };
  quad::Options opt;
  opt.max_piece = 1.0;
  opt.relative_tol = 1e-8;
  opt.absolute_tol = 0.0;
  const double lx = std::log(X);
  const auto integral = quad::integrate(
      [&](double y) { return std::exp(y) * f(std::exp(y)); }, lx, lx + 400.0, opt);
  return 2.0 * d.degree * 1.04 * (X * f(X) + integral.value) / (2.0 * kPi);
}

struct PrimeBlock {
  cplx value;
  std::uint64_t cutoff = 0;
  double tail = 0.0;
};

PrimeBlock prime_block(const LFunctionDescriptor& d, const TestFunction& h,
                       const FormulaOptions& opt) {
  PrimeBlock out;
  if (h.band_limit) {
    const double x = std::exp(2.0 * kPi * *h.band_limit);
    if (x > static_cast<double>(opt.sieve_cap)) {
      throw BudgetError("explicit formula: band limit needs prime powers beyond the sieve cap");
    }
    out.cutoff = static_cast<std::uint64_t>(std::floor(x));
  } else {
    if (!h.fourier_envelope) {
      throw PreconditionError("explicit formula: test function needs a band limit or an envelope");
    }
    double X = 1024.0;
    while (prime_tail_bound(d, h, X) > opt.prime_tol) {
      X *= 1.25;
      if (X > static_cast<double>(opt.sieve_cap)) {
        throw BudgetError("explicit formula: prime truncation tolerance needs a table beyond the sieve cap");
      }
    }
    out.cutoff = static_cast<std::uint64_t>(X);
    out.tail = prime_tail_bound(d, h, X);
  }
  if (out.cutoff < 2) return out;
  const auto table = shared_mangoldt(out.cutoff, opt.sieve_cap);
  cplx sum = 0.0;
  table->for_each_prime_power(out.cutoff, [&](std::uint64_t n, std::uint64_t p, unsigned k) {
    const cplx c = coefficient(d, p, k);
    const double ln = std::log(static_cast<double>(n));
    const double xi = ln / (2.0 * kPi);
    sum += (c * h.fourier(xi) + std::conj(c) * h.fourier(-xi)) / std::sqrt(static_cast<double>(n));
  });
  out.value = sum / (2.0 * kPi);
  return out;
}

}  // namespace

ExplicitFormulaReport evaluate_formula(const LFunctionDescriptor& d, const ZeroSet& zs,
                                       const TestFunction& h0, double shift,
                                       const FormulaOptions& opt) {
  if (zs.descriptor_id != descriptor_hash(d)) {
    throw PreconditionError("explicit formula: zero set belongs to a different descriptor");
  }
  const TestFunction h = shifted(h0, shift);
  ExplicitFormulaReport rep;
  const double T = zs.complete_to;
  rep.zero_height = T;

  auto primes = std::async(std::launch::async, [&] { return prime_block(d, h, opt); });

  cplx zsum = 0.0;
  const auto gammas = zs.signed_ordinates(T);
  for (double g : gammas) zsum += h.eval(cplx(g, 0.0));
  rep.zeros_used = gammas.size();

  const double R = h.core_radius;
  double quad_err = 0.0;
  cplx arch, tail;
  const auto outer = model_tail(d, h, R);
  quad_err += 0.01 * std::abs(outer.value) + outer.error;
  if (T >= R) {
    const auto mid = arch_piece(d, h, -R, R);
    arch = mid.value + outer.value;
    const auto beyond = model_tail(d, h, T);
    tail = beyond.value;
    quad_err += mid.error + beyond.error + 0.01 * std::abs(beyond.value);
  } else {
    const auto left = arch_piece(d, h, -R, -T);
    const auto mid = arch_piece(d, h, -T, T);
    const auto right = arch_piece(d, h, T, R);
    tail = left.value + right.value + outer.value;
    arch = tail + mid.value;
    quad_err += left.error + mid.error + right.error;
  }
  rep.zero_tail = tail;
  rep.zero_sum = zsum + tail;
  rep.archimedean = arch;

  const cplx half_i(0.0, 0.5);
  rep.pole_terms = static_cast<double>(d.pole_order) * (h.eval(-half_i) + h.eval(half_i));

  cplx spectral = 0.0;
  for (const auto& mu : d.spectral) {
    double w = 0.0;
    if (mu.real() > -1.0 && mu.real() < -0.5) w = 1.0;
    if (mu.real() == -0.5) w = 0.5;
    if (w == 0.0) continue;
    const cplx minus_i(0.0, -1.0);
    spectral += w * (h.eval((-mu - 0.5) * minus_i) + h.eval((0.5 + mu) * minus_i));
  }
  rep.spectral_correction = spectral;

  const auto pb = primes.get();
  rep.prime_sum = pb.value;
  rep.prime_cutoff = pb.cutoff;

  rep.residual = rep.zero_sum - rep.pole_terms - rep.archimedean + rep.prime_sum + rep.spectral_correction;

  // Zeros beyond T: mean density (1/2pi)(log N + m log(u/2pi)) against A u^{-(1+delta)},
  // both sides, plus the size of the smooth estimate itself.
  double zero_budget = std::abs(tail);
  if (h.decay && T > 0.0) {
    const auto [A, delta] = h.decay(T);
    const double logn = std::log(static_cast<double>(d.conductor));
    const double lt = std::max(0.0, std::log(T / (2.0 * kPi)));
    const double pw = std::pow(T, -delta);
    zero_budget += 2.0 * A / (2.0 * kPi) * ((logn + d.degree * lt) * pw / delta + d.degree * pw / (delta * delta));
  }
  ErrorBudget q;
  q.absolute = quad_err;
  q.source = ErrorBudget::Source::Quadrature;
  ErrorBudget z;
  z.absolute = zero_budget;
  z.source = ErrorBudget::Source::TailEstimate;
  ErrorBudget p;
  p.absolute = pb.tail + 1e-14 * static_cast<double>(pb.cutoff);
  p.source = ErrorBudget::Source::SeriesTruncation;
  ErrorBudget zp;
  zp.absolute = 1e-12 * static_cast<double>(rep.zeros_used);
  zp.source = ErrorBudget::Source::TableLookup;
  rep.budget = q + z + p + zp;

  if (opt.tolerance > 0.0 && rep.budget.absolute > opt.tolerance) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "explicit formula: budget %.3g exceeds tolerance %.3g (%s)",
                  rep.budget.absolute, opt.tolerance, to_string(rep.budget.source));
    throw BudgetError(buf);
  }
  return rep;
}

std::string report_csv_header() {
  return "label,zero_height,prime_cutoff,zeros_used,zero_sum_re,zero_sum_im,zero_tail_re,"
         "pole_re,pole_im,archimedean_re,archimedean_im,prime_sum_re,prime_sum_im,"
         "spectral_re,residual_re,residual_im,abs_residual,budget,budget_source";
}

std::string report_csv_row(const std::string& label, const ExplicitFormulaReport& r) {
  char buf[1024];
  std::snprintf(buf, sizeof buf,
                "%s,%.15g,%llu,%zu,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g,"
                "%.15g,%.15g,%.15g,%.15g,%s",
                label.c_str(), r.zero_height, static_cast<unsigned long long>(r.prime_cutoff),
                r.zeros_used, r.zero_sum.real(), r.zero_sum.imag(), r.zero_tail.real(),
                r.pole_terms.real(), r.pole_terms.imag(), r.archimedean.real(),
                r.archimedean.imag(), r.prime_sum.real(), r.prime_sum.imag(),
                r.spectral_correction.real(), r.residual.real(), r.residual.imag(),
                std::abs(r.residual), r.budget.absolute, to_string(r.budget.source));
  return buf;
}

std::string report_text(const std::string& label, const ExplicitFormulaReport& r) {
  std::ostringstream out;
  char buf[256];
  out << label << "\n";
  std::snprintf(buf, sizeof buf, "  zeros used        %zu (|gamma| <= %.6g)\n", r.zeros_used, r.zero_height);
  out << buf;
  std::snprintf(buf, sizeof buf, "  zero sum          %+.15g %+.3gi  (tail estimate %+.3g)\n",
                r.zero_sum.real(), r.zero_sum.imag(), r.zero_tail.real());
  out << buf;
  std::snprintf(buf, sizeof buf, "  pole terms        %+.15g\n", r.pole_terms.real());
  out << buf;
  std::snprintf(buf, sizeof buf, "  archimedean       %+.15g %+.3gi\n", r.archimedean.real(), r.archimedean.imag());
  out << buf;
  std::snprintf(buf, sizeof buf, "  prime sum         %+.15g %+.3gi  (n <= %llu)\n", r.prime_sum.real(),
                r.prime_sum.imag(), static_cast<unsigned long long>(r.prime_cutoff));
  out << buf;
  std::snprintf(buf, sizeof buf, "  residual          %.3e  (budget %.3e, %s)\n", std::abs(r.residual),
                r.budget.absolute, to_string(r.budget.source));
  out << buf;
  return out.str();
}

}  // namespace szeta
