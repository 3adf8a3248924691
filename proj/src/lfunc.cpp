#include "szeta/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "szeta/error.hpp"

namespace szeta {

namespace {

using u64 = std::uint64_t;

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

u64 primitive_root_mod_p(u64 p) {
  if (p == 2) return 1;
  const auto fs = factorize(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (auto [f, e] : fs) {
      (void)e;
      if (powmod(g, (p - 1) / f, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 0;
}

// One cyclic factor of (Z/qZ)^*: residues mod `pe` with their discrete log
// to the generator.
struct Component {
  u64 pe;
  std::uint32_t order;
  std::vector<std::int64_t> dlog;  // -1 where undefined
};

std::vector<Component> decompose(u64 q) {
  std::vector<Component> out;
  for (auto [p, e] : factorize(q)) {
    u64 pe = 1;
    for (unsigned i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e == 1) continue;
      // -1 component
      Component minus{pe, 2, std::vector<std::int64_t>(pe, -1)};
      Component five{pe, static_cast<std::uint32_t>(pe / 4), std::vector<std::int64_t>(pe, -1)};
      u64 m = 1;
      for (u64 k = 0; k < pe / 4; ++k) {
        minus.dlog[m] = 0;
        minus.dlog[pe - m] = 1;
        five.dlog[m] = static_cast<std::int64_t>(k);
        five.dlog[pe - m] = static_cast<std::int64_t>(k);
        m = m * 5 % pe;
      }
      out.push_back(std::move(minus));
      if (e >= 3) out.push_back(std::move(five));
      continue;
    }
    u64 g = primitive_root_mod_p(p);
    if (e > 1 && powmod(g, p - 1, p * p) == 1) g += p;
    const u64 phi = pe / p * (p - 1);
    Component c{pe, static_cast<std::uint32_t>(phi), std::vector<std::int64_t>(pe, -1)};
    u64 m = 1;
    for (u64 k = 0; k < phi; ++k) {
      c.dlog[m] = static_cast<std::int64_t>(k);
      m = m * g % pe;
    }
    out.push_back(std::move(c));
  }
  return out;
}

cplx unit_root(std::uint64_t num, std::uint64_t den) {
  // exp(2 pi i num/den) with the angle reduced to [0, 1) turns first.
  const double x = 2.0 * static_cast<double>(num % den) / static_cast<double>(den);
  return {std::cos(kPi * x), sin_pi(x)};
}

}  // namespace

DirichletCharacter::DirichletCharacter(std::uint32_t modulus, std::vector<std::uint32_t> exponents)
    : q_(modulus), exponents_(std::move(exponents)) {
  if (modulus < 1) throw PreconditionError("DirichletCharacter: modulus must be >= 1");
  if (modulus > kMaxModulus) throw CapacityError("DirichletCharacter: modulus exceeds 10^6");
  const auto comps = decompose(modulus);
  if (exponents_.size() != comps.size()) {
    throw PreconditionError("DirichletCharacter: modulus " + std::to_string(modulus) + " needs " +
                            std::to_string(comps.size()) + " exponents");
  }
  for (std::size_t i = 0; i < comps.size(); ++i) {
    orders_.push_back(comps[i].order);
    exponents_[i] %= comps[i].order;
    lcm_ = std::lcm(lcm_, comps[i].order);
  }
  table_.assign(modulus, -1);
  for (u64 n = 0; n < modulus; ++n) {
    if (std::gcd(n, static_cast<u64>(modulus)) != 1) continue;
    u64 idx = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const auto& c = comps[i];
      const auto k = static_cast<u64>(c.dlog[n % c.pe]);
      idx += (k * exponents_[i] % c.order) * (lcm_ / c.order);
    }
    table_[n] = static_cast<std::int32_t>(idx % lcm_);
  }
  if (modulus == 1) table_[0] = 0;
  values_.assign(modulus, 0.0);
  for (u64 n = 0; n < modulus; ++n) {
    if (table_[n] >= 0) values_[n] = unit_root(static_cast<u64>(table_[n]), lcm_);
  }
}

DirichletCharacter DirichletCharacter::legendre(std::uint32_t p) {
  if (p < 3 || p % 2 == 0 || factorize(p).size() != 1 || factorize(p)[0].second != 1) {
    throw PreconditionError("legendre: modulus must be an odd prime");
  }
  return DirichletCharacter(p, {(p - 1) / 2});
}

std::optional<std::uint32_t> DirichletCharacter::index(std::uint64_t n) const {
  const auto v = table_[n % q_];
  if (v < 0) return std::nullopt;
  return static_cast<std::uint32_t>(v);
}

cplx DirichletCharacter::operator()(std::uint64_t n) const { return values_[n % q_]; }

int DirichletCharacter::parity() const {
  if (q_ <= 2) return 0;
  return *index(q_ - 1) == 0 ? 0 : 1;
}

bool DirichletCharacter::is_real() const {
  for (auto v : table_) {
    if (v >= 0 && (2 * static_cast<u64>(v)) % lcm_ != 0) return false;
  }
  return true;
}

bool DirichletCharacter::is_primitive() const {
  if (q_ == 1) return true;
  for (auto [p, e] : factorize(q_)) {
    (void)e;
    const u64 d = q_ / p;
    // Induced from modulus d iff chi(n) = 1 whenever n = 1 mod d.
    bool induced = true;
    for (u64 n = 1; n < q_; n += d) {
      const auto v = table_[n];
      if (v >= 0 && v != 0) {
        induced = false;
        break;
      }
    }
    if (induced) return false;
  }
  return true;
}

cplx DirichletCharacter::gauss_sum() const {
  cplx tau = 0.0;
  for (u64 n = 1; n < q_; ++n) {
    const auto v = table_[n];
    if (v < 0) continue;
    tau += unit_root(v, lcm_) * unit_root(n, q_);
  }
  return tau;
}

DirichletCharacter DirichletCharacter::conj() const {
  std::vector<std::uint32_t> e(exponents_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = (orders_[i] - exponents_[i]) % orders_[i];
  return DirichletCharacter(q_, std::move(e));
}

const char* to_string(LKind k) {
  switch (k) {
    case LKind::Zeta: return "zeta";
    case LKind::Dirichlet: return "dirichlet";
    case LKind::Abstract: return "abstract";
  }
  return "?";
}

void LFunctionDescriptor::validate() const {
  if (degree < 1) throw PreconditionError("descriptor: degree must be >= 1");
  if (conductor < 1) throw PreconditionError("descriptor: conductor must be >= 1");
  if (static_cast<int>(spectral.size()) != degree) {
    throw PreconditionError("descriptor: need exactly `degree` spectral parameters");
  }
  if (pole_order < 0 || pole_order > degree) {
    throw PreconditionError("descriptor: pole order outside [0, degree]");
  }
  if (!(theta >= 0.0 && theta <= 1.0)) throw PreconditionError("descriptor: theta outside [0, 1]");
  std::vector<bool> used(spectral.size(), false);
  for (std::size_t i = 0; i < spectral.size(); ++i) {
    if (!(spectral[i].real() > -1.0)) {
      throw PreconditionError("descriptor: spectral parameter with Re mu <= -1");
    }
    if (used[i]) continue;
    if (std::abs(spectral[i].imag()) <= 1e-12) {
      used[i] = true;
      continue;
    }
    bool paired = false;
    for (std::size_t j = i + 1; j < spectral.size(); ++j) {
      if (!used[j] && std::abs(spectral[j] - std::conj(spectral[i])) <= 1e-12) {
        used[i] = used[j] = true;
        paired = true;
        break;
      }
    }
    if (!paired) throw PreconditionError("descriptor: spectral parameters not closed under conjugation");
  }
  if (root_number && std::abs(std::abs(*root_number) - 1.0) > 1e-12) {
    throw PreconditionError("descriptor: |root number| != 1");
  }
}

cplx LFunctionDescriptor::root_number_or_throw() const {
  if (!root_number) throw PreconditionError("descriptor: root number unknown");
  return *root_number;
}

LFunctionDescriptor zeta_descriptor() {
  LFunctionDescriptor d;
  d.degree = 1;
  d.conductor = 1;
  d.spectral = {0.0};
  d.pole_order = 1;
  d.theta = 0.0;
  d.root_number = 1.0;
  d.self_dual = true;
  d.kind = LKind::Zeta;
  d.oracle = [](std::uint64_t p, unsigned) { return cplx(std::log(static_cast<double>(p))); };
  d.validate();
  return d;
}

LFunctionDescriptor dirichlet_descriptor(const DirichletCharacter& chi) {
  if (chi.modulus() <= 1) throw PreconditionError("dirichlet_descriptor: need q > 1");
  if (!chi.is_primitive()) {
    throw PreconditionError("dirichlet_descriptor: character mod " +
                            std::to_string(chi.modulus()) + " is not primitive");
  }
  auto ch = std::make_shared<const DirichletCharacter>(chi);
  const int a = chi.parity();
  const cplx ia = a ? cplx(0.0, 1.0) : cplx(1.0, 0.0);
  LFunctionDescriptor d;
  d.degree = 1;
  d.conductor = chi.modulus();
  d.spectral = {static_cast<double>(a)};
  d.pole_order = 0;
  d.theta = 0.0;
  const cplx kappa = chi.gauss_sum() / (ia * std::sqrt(static_cast<double>(chi.modulus())));
  d.root_number = kappa;
  d.self_dual = chi.is_real();
  d.kind = LKind::Dirichlet;
  d.character = ch;
  d.oracle = [ch](std::uint64_t p, unsigned k) {
    const std::uint64_t q = ch->modulus();
    return (*ch)(powmod(p, k, q)) * std::log(static_cast<double>(p));
  };
  d.validate();
  return d;
}

LFunctionDescriptor abstract_descriptor(int degree, std::uint64_t conductor,
                                        std::vector<cplx> spectral, int pole_order,
                                        double theta, std::optional<cplx> root_number,
                                        bool self_dual) {
  LFunctionDescriptor d;
  d.degree = degree;
  d.conductor = conductor;
  d.spectral = std::move(spectral);
  d.pole_order = pole_order;
  d.theta = theta;
  d.root_number = root_number;
  d.self_dual = self_dual;
  d.kind = LKind::Abstract;
  d.validate();
  return d;
}

LFunctionDescriptor dual(const LFunctionDescriptor& d) {
  if (d.self_dual) return d;
  if (d.kind == LKind::Dirichlet) return dirichlet_descriptor(d.character->conj());
  LFunctionDescriptor out = d;
  for (auto& mu : out.spectral) mu = std::conj(mu);
  if (out.root_number) out.root_number = std::conj(*out.root_number);
  if (d.oracle) {
    auto f = d.oracle;
    out.oracle = [f](std::uint64_t p, unsigned k) { return std::conj(f(p, k)); };
  }
  return out;
}

cplx coefficient(const LFunctionDescriptor& d, std::uint64_t p, unsigned k) {
  if (!d.oracle) throw PreconditionError("descriptor has no coefficient backend");
  const cplx v = d.oracle(p, k);
  const double logp = std::log(static_cast<double>(p));
  const double cap = d.degree * logp * std::exp(d.theta * k * logp);
  if (std::abs(v) > cap * (1.0 + 1e-12)) {
    throw PreconditionError("coefficient bound violated at p = " + std::to_string(p) +
                            ", k = " + std::to_string(k));
  }
  return v;
}

cplx coefficient(const LFunctionDescriptor& d, std::uint64_t n, const MangoldtTable& table) {
  const auto pp = table.prime_power(n);
  if (!pp) return 0.0;
  return coefficient(d, pp->prime, pp->exponent);
}

double analytic_conductor(const LFunctionDescriptor& d) {
  double c = static_cast<double>(d.conductor);
  for (const auto& mu : d.spectral) c *= std::abs(mu) + 3.0;
  return c;
}

double analytic_conductor(const LFunctionDescriptor& d, double t) {
  return analytic_conductor(d) * std::pow(std::abs(t) + 1.0, d.degree);
}

cplx log_gamma_factor(const LFunctionDescriptor& d, cplx s) {
  cplx out = 0.5 * s * std::log(static_cast<double>(d.conductor));
  for (std::size_t j = 0; j < d.spectral.size(); ++j) {
    const cplx z = s + d.spectral[j];
    if (z.imag() == 0.0 && z.real() <= 0.0 && std::fmod(-z.real(), 2.0) == 0.0) {
      throw PoleError("gamma factor: pole at spectral index j = " + std::to_string(j));
    }
    out += log_gamma_r(z);
  }
  return out;
}

cplx gamma_factor(const LFunctionDescriptor& d, cplx s) { return std::exp(log_gamma_factor(d, s)); }

cplx gamma_factor_logderiv(const LFunctionDescriptor& d, cplx s) {
  cplx out = 0.5 * std::log(static_cast<double>(d.conductor));
  for (const auto& mu : d.spectral) out += gamma_r_logderiv(s + mu);
  return out;
}

namespace {

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

cplx parse_cplx(const std::string& s, std::size_t line) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) return std::stod(s);
    return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ParseError("descriptor: bad complex number '" + s + "'", line);
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

}  // namespace

std::string serialize(const LFunctionDescriptor& d) {
  std::ostringstream out;
  out << "kind = " << to_string(d.kind) << "\n";
  out << "degree = " << d.degree << "\n";
  out << "conductor = " << d.conductor << "\n";
  out << "spectral = ";
  for (std::size_t j = 0; j < d.spectral.size(); ++j) {
    if (j) out << ";";
    out << fmt_double(d.spectral[j].real()) << ":" << fmt_double(d.spectral[j].imag());
  }
  out << "\n";
  out << "pole_order = " << d.pole_order << "\n";
  out << "theta = " << fmt_double(d.theta) << "\n";
  out << "root_number = ";
  if (d.root_number) {
    out << fmt_double(d.root_number->real()) << ":" << fmt_double(d.root_number->imag());
  } else {
    out << "unknown";
  }
  out << "\n";
  out << "self_dual = " << (d.self_dual ? "true" : "false") << "\n";
  if (d.character) {
    out << "character = " << d.character->modulus() << ":";
    const auto& e = d.character->exponents();
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? "," : "") << e[i];
    out << "\n";
  }
  return out.str();
}

LFunctionDescriptor parse_descriptor(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  std::string kind = "abstract";
  LFunctionDescriptor d;
  std::optional<std::string> character;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("descriptor: expected key = value", line);
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    try {
      if (key == "kind") {
        kind = val;
      } else if (key == "degree") {
        d.degree = std::stoi(val);
      } else if (key == "conductor") {
        d.conductor = std::stoull(val);
      } else if (key == "spectral") {
        d.spectral.clear();
        for (const auto& part : split(val, ';')) d.spectral.push_back(parse_cplx(part, line));
      } else if (key == "pole_order") {
        d.pole_order = std::stoi(val);
      } else if (key == "theta") {
        d.theta = std::stod(val);
      } else if (key == "root_number") {
        if (val == "unknown") {
          d.root_number.reset();
        } else {
          d.root_number = parse_cplx(val, line);
        }
      } else if (key == "self_dual") {
        if (val != "true" && val != "false") throw ParseError("descriptor: self_dual must be true/false", line);
        d.self_dual = val == "true";
      } else if (key == "character") {
        character = val;
      } else {
        throw ParseError("descriptor: unknown key '" + key + "'", line);
      }
    } catch (const std::invalid_argument&) {
      throw ParseError("descriptor: bad value for '" + key + "'", line);
    } catch (const std::out_of_range&) {
      throw ParseError("descriptor: value out of range for '" + key + "'", line);
    }
  }
  if (kind == "zeta") return zeta_descriptor();
  if (kind == "dirichlet") {
    if (!character) throw ParseError("descriptor: dirichlet kind needs a character", 0);
    const auto colon = character->find(':');
    if (colon == std::string::npos) throw ParseError("descriptor: character must be q:k1,k2,...", 0);
    std::vector<std::uint32_t> exps;
    try {
      const auto q = static_cast<std::uint32_t>(std::stoul(character->substr(0, colon)));
      const std::string rest = character->substr(colon + 1);
      if (!rest.empty()) {
        for (const auto& part : split(rest, ',')) exps.push_back(static_cast<std::uint32_t>(std::stoul(part)));
      }
      return dirichlet_descriptor(DirichletCharacter(q, exps));
    } catch (const std::logic_error&) {
      throw ParseError("descriptor: bad character '" + *character + "'", 0);
    }
  }
  if (kind != "abstract") throw ParseError("descriptor: unknown kind '" + kind + "'", 0);
  d.kind = LKind::Abstract;
  d.validate();
  return d;
}

std::string descriptor_hash(const LFunctionDescriptor& d) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : serialize(d)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace szeta
