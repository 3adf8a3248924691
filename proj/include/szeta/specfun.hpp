#pragma once

// Scalar special functions and the von Mangoldt sieve.
//
// Gamma-family functions use upward recurrence until |z| >= 16 (and
// Re z >= 1/2) followed by an 8-term Stirling/Bernoulli series. With that
// shift the first omitted term is below 1e-20 relative, so the budget is
// dominated by rounding in the recurrence sum.

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace szeta {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;

struct ErrorBudget {
  enum class Source { SeriesTruncation, Quadrature, TailEstimate, TableLookup };

  double absolute = 0.0;
  double relative = 0.0;
  Source source = Source::SeriesTruncation;

  // Budgets add linearly (worst case). The source of the larger absolute
  // contribution is kept.
  ErrorBudget& operator+=(const ErrorBudget& other) {
    if (other.absolute > absolute) source = other.source;
    absolute += other.absolute;
    relative += other.relative;
    return *this;
  }
  friend ErrorBudget operator+(ErrorBudget a, const ErrorBudget& b) { return a += b; }
};

const char* to_string(ErrorBudget::Source s);

template <class T>
struct Estimate {
  T value;
  ErrorBudget budget;
};

/// sin(pi x) with exact argument reduction, so zeros at integers are exact.
double sin_pi(double x);
cplx sin_pi(cplx z);

/// Digamma psi(z). Throws PoleError at nonpositive integers.
Estimate<cplx> digamma_estimate(cplx z);
cplx digamma(cplx z);
double digamma(double x);

/// Trigamma psi'(z). Throws PoleError at nonpositive integers.
cplx trigamma(cplx z);
double trigamma(double x);

/// log Gamma(z), continuous off the negative real axis (sum of principal
/// logs along the recurrence). Agrees with the usual principal branch.
cplx log_gamma(cplx z);

/// log Gamma_R(z) = -(z/2) log pi + log Gamma(z/2).
cplx log_gamma_r(cplx z);

/// Gamma_R'/Gamma_R(z) = -(1/2) log pi + (1/2) psi(z/2).
cplx gamma_r_logderiv(cplx z);

/// Riemann-Siegel theta: continuous Im log Gamma_R(1/2 + it), theta(0) = 0.
double riemann_siegel_theta(double t);

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
};

/// Exact von Mangoldt data up to `limit`, held as the ascending prime list.
/// Lambda(n) is reported as (prime, exponent); the log is taken on read.
/// Immutable after construction and safe to share across threads.
class MangoldtTable {
 public:
  static constexpr std::uint64_t kDefaultCap = 1'000'000'000ULL;

  /// Segmented sieve. Throws PreconditionError for limit < 2 and
  /// CapacityError for limit > cap.
  explicit MangoldtTable(std::uint64_t limit, std::uint64_t cap = kDefaultCap);

  std::uint64_t limit() const noexcept { return limit_; }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }

  bool is_prime(std::uint64_t n) const;
  std::optional<PrimePower> prime_power(std::uint64_t n) const;
  double lambda(std::uint64_t n) const;

  /// Chebyshev psi(x) = sum_{n <= x} Lambda(n), x <= limit.
  double chebyshev_psi(std::uint64_t x) const;

  /// Calls f(n, p, k) for every prime power n = p^k <= upto, ordered by p
  /// then k. Deterministic order, so sums are reproducible.
  template <class F>
  void for_each_prime_power(std::uint64_t upto, F&& f) const {
    for (std::uint32_t p32 : primes_) {
      const std::uint64_t p = p32;
      if (p > upto) break;
      std::uint64_t n = p;
      unsigned k = 1;
      while (true) {
        f(n, p, k);
        if (n > upto / p) break;
        n *= p;
        ++k;
      }
    }
  }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> primes_;
};

MangoldtTable mangoldt_sieve(std::uint64_t limit,
                             std::uint64_t cap = MangoldtTable::kDefaultCap);

/// sum_{n <= e^{2 pi delta}} Lambda(n)/sqrt(n) * (1/log n + 1/delta).
/// Throws PreconditionError when the table does not reach e^{2 pi delta}.
double prime_sum_bound(double delta, const MangoldtTable& table);

}  // namespace szeta
