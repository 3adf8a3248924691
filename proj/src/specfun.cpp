#include "szeta/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "szeta/error.hpp"

namespace szeta {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kShiftRadius = 16.0;

// B_2 .. B_16
constexpr std::array<double, 8> kBernoulli = {
    1.0 / 6.0,  -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,  -3617.0 / 510.0};

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

void require_not_pole(cplx z, const char* fn) {
  if (is_nonpositive_integer(z)) {
    throw PoleError(std::string(fn) + ": pole of Gamma at z = " +
                    std::to_string(z.real()));
  }
}

bool needs_shift(cplx z) { return std::abs(z) < kShiftRadius || z.real() < 0.5; }

double cos_pi(double x) {
  const double n = std::nearbyint(x);
  const double c = std::cos(kPi * (x - n));
  return std::fmod(n, 2.0) == 0.0 ? c : -c;
}

double sin_pi_real(double x);

cplx cot_pi(cplx z) {
  const double x = z.real();
  const double y = z.imag();
  const cplx s(sin_pi_real(x) * std::cosh(kPi * y), cos_pi(x) * std::sinh(kPi * y));
  const cplx c(cos_pi(x) * std::cosh(kPi * y), -sin_pi_real(x) * std::sinh(kPi * y));
  return c / s;
}

double sin_pi_real(double x) {
  const double n = std::nearbyint(x);
  const double s = std::sin(kPi * (x - n));
  return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

// psi(z) for |z| >= 16, Re z >= 1/2.
cplx digamma_asymptotic(cplx z) {
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx pow = inv2;
  cplx series = 0.0;
  for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
    series += kBernoulli[k] / (2.0 * static_cast<double>(k + 1)) * pow;
    pow *= inv2;
  }
  return std::log(z) - 0.5 * inv - series;
}

cplx trigamma_asymptotic(cplx z) {
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx pow = inv2 * inv;
  cplx series = 0.0;
  for (double b : kBernoulli) {
    series += b * pow;
    pow *= inv2;
  }
  return inv + 0.5 * inv2 + series;
}

cplx log_gamma_asymptotic(cplx z) {
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx pow = inv;
  cplx series = 0.0;
  for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
    const double n = 2.0 * static_cast<double>(k + 1);
    series += kBernoulli[k] / (n * (n - 1.0)) * pow;
    pow *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series;
}

}  // namespace

const char* to_string(ErrorBudget::Source s) {
  switch (s) {
    case ErrorBudget::Source::SeriesTruncation: return "series-truncation";
    case ErrorBudget::Source::Quadrature: return "quadrature";
    case ErrorBudget::Source::TailEstimate: return "tail-estimate";
    case ErrorBudget::Source::TableLookup: return "table-lookup";
  }
  return "unknown";
}

double sin_pi(double x) { return sin_pi_real(x); }

cplx sin_pi(cplx z) {
  const double x = z.real();
  const double y = z.imag();
  return {sin_pi(x) * std::cosh(kPi * y), cos_pi(x) * std::sinh(kPi * y)};
}

Estimate<cplx> digamma_estimate(cplx z) {
  require_not_pole(z, "digamma");
  if (z.real() < 0.0) {
    // psi(z) = psi(1 - z) - pi cot(pi z)
    auto reflected = digamma_estimate(1.0 - z);
    const cplx c = kPi * cot_pi(z);
    reflected.value -= c;
    reflected.budget.absolute += 4.0 * kEps * std::abs(c);
    return reflected;
  }
  cplx shift_sum = 0.0;
  double magnitude = 0.0;
  while (needs_shift(z)) {
    const cplx term = 1.0 / z;
    shift_sum += term;
    magnitude += std::abs(term);
    z += 1.0;
  }
  const cplx asym = digamma_asymptotic(z);
  const cplx value = asym - shift_sum;
  ErrorBudget budget;
  // Rounding in the shift sum plus the (sub-1e-20) omitted Bernoulli term.
  budget.absolute = 4.0 * kEps * (magnitude + std::abs(asym) + 1.0) + 1e-20;
  budget.relative = 0.0;
  budget.source = ErrorBudget::Source::SeriesTruncation;
  return {value, budget};
}

cplx digamma(cplx z) { return digamma_estimate(z).value; }

double digamma(double x) { return digamma(cplx(x, 0.0)).real(); }

cplx trigamma(cplx z) {
  require_not_pole(z, "trigamma");
  if (z.real() < 0.0) {
    // psi'(z) = pi^2 / sin^2(pi z) - psi'(1 - z)
    const cplx s = sin_pi(z);
    return kPi * kPi / (s * s) - trigamma(1.0 - z);
  }
  cplx shift_sum = 0.0;
  while (needs_shift(z)) {
    shift_sum += 1.0 / (z * z);
    z += 1.0;
  }
  return trigamma_asymptotic(z) + shift_sum;
}

double trigamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) throw PoleError("trigamma: pole at nonpositive integer");
  if (x < 0.0) {
    const double s = sin_pi(x);
    return kPi * kPi / (s * s) - trigamma(1.0 - x);
  }
  double shift_sum = 0.0;
  while (x < kShiftRadius) {
    shift_sum += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double pow = inv2 * inv;
  double series = 0.0;
  for (double b : kBernoulli) {
    series += b * pow;
    pow *= inv2;
  }
  return inv + 0.5 * inv2 + series + shift_sum;
}

cplx log_gamma(cplx z) {
  require_not_pole(z, "log_gamma");
  if (z.imag() == 0.0 && z.real() < 0.0) {
    throw PreconditionError("log_gamma: negative real axis is a branch cut");
  }
  cplx log_sum = 0.0;
  while (needs_shift(z)) {
    log_sum += std::log(z);
    z += 1.0;
  }
  return log_gamma_asymptotic(z) - log_sum;
}

cplx log_gamma_r(cplx z) { return -0.5 * z * std::log(kPi) + log_gamma(0.5 * z); }

cplx gamma_r_logderiv(cplx z) { return -0.5 * std::log(kPi) + 0.5 * digamma(0.5 * z); }

double riemann_siegel_theta(double t) {
  if (t == 0.0) return 0.0;
  return -0.5 * t * std::log(kPi) + log_gamma(cplx(0.25, 0.5 * t)).imag();
}

// ---------------------------------------------------------------------------
// Sieve
// ---------------------------------------------------------------------------

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// p^k, or 0 on overflow past `bound`.
std::uint64_t checked_pow(std::uint64_t p, unsigned k, std::uint64_t bound) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (r > bound / p) return 0;
    r *= p;
  }
  return r;
}

}  // namespace

MangoldtTable::MangoldtTable(std::uint64_t limit, std::uint64_t cap) : limit_(limit) {
  if (limit < 2) throw PreconditionError("mangoldt_sieve: limit must be >= 2");
  if (limit > cap) {
    throw CapacityError("mangoldt_sieve: limit " + std::to_string(limit) +
                        " exceeds cap " + std::to_string(cap));
  }

  const std::uint64_t root = isqrt(limit);
  std::vector<std::uint8_t> small(root + 1, 1);
  std::vector<std::uint32_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  }

  const double logl = std::log(static_cast<double>(limit));
  primes_.reserve(static_cast<std::size_t>(static_cast<double>(limit) / (logl - 1.2)) + 64);
  primes_.push_back(2);

  // Odd numbers only: index i in a segment stands for lo + 2i.
  constexpr std::uint64_t kSegment = 1u << 18;
  std::vector<std::uint8_t> seg(kSegment);
  for (std::uint64_t lo = 3; lo <= limit; lo += 2 * kSegment) {
    const std::uint64_t hi = std::min(limit, lo + 2 * kSegment - 1);
    const std::uint64_t count = (hi - lo) / 2 + 1;
    std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(count), 1);
    for (std::size_t bi = 1; bi < base.size(); ++bi) {
      const std::uint64_t p = base[bi];
      if (p * p > hi) break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      if (start % 2 == 0) start += p;
      for (std::uint64_t m = start; m <= hi; m += 2 * p) seg[(m - lo) / 2] = 0;
    }
    for (std::uint64_t i = 0; i < count; ++i) {
      if (seg[i]) primes_.push_back(static_cast<std::uint32_t>(lo + 2 * i));
    }
  }
  primes_.shrink_to_fit();
}

bool MangoldtTable::is_prime(std::uint64_t n) const {
  if (n > limit_) throw PreconditionError("MangoldtTable: query beyond table limit");
  return std::binary_search(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(n));
}

std::optional<PrimePower> MangoldtTable::prime_power(std::uint64_t n) const {
  if (n < 2) return std::nullopt;
  if (is_prime(n)) return PrimePower{n, 1};
  for (unsigned k = 2; (1ULL << k) <= n; ++k) {
    const auto r = static_cast<std::uint64_t>(
        std::llround(std::pow(static_cast<double>(n), 1.0 / k)));
    for (std::uint64_t c = (r > 2 ? r - 1 : 2); c <= r + 1; ++c) {
      if (checked_pow(c, k, n) == n && is_prime(c)) return PrimePower{c, k};
    }
  }
  return std::nullopt;
}

double MangoldtTable::lambda(std::uint64_t n) const {
  const auto pk = prime_power(n);
  return pk ? std::log(static_cast<double>(pk->prime)) : 0.0;
}

double MangoldtTable::chebyshev_psi(std::uint64_t x) const {
  if (x > limit_) throw PreconditionError("chebyshev_psi: x beyond table limit");
  double sum = 0.0;
  for_each_prime_power(x, [&](std::uint64_t, std::uint64_t p, unsigned) {
    sum += std::log(static_cast<double>(p));
  });
  return sum;
}

MangoldtTable mangoldt_sieve(std::uint64_t limit, std::uint64_t cap) {
  return MangoldtTable(limit, cap);
}

double prime_sum_bound(double delta, const MangoldtTable& table) {
  if (!(delta > 0.0)) throw PreconditionError("prime_sum_bound: delta must be positive");
  const double cutoff = std::exp(2.0 * kPi * delta);
  if (cutoff < 2.0) return 0.0;
  if (cutoff > static_cast<double>(table.limit())) {
    throw PreconditionError("prime_sum_bound: table limit " + std::to_string(table.limit()) +
                            " below e^{2 pi delta} = " + std::to_string(cutoff));
  }
  const auto x = static_cast<std::uint64_t>(std::floor(cutoff));
  double sum = 0.0;
  table.for_each_prime_power(x, [&](std::uint64_t n, std::uint64_t p, unsigned k) {
    const double logp = std::log(static_cast<double>(p));
    const double logn = k * logp;
    sum += logp / std::sqrt(static_cast<double>(n)) * (1.0 / logn + 1.0 / delta);
  });
  return sum;
}

}  // namespace szeta
