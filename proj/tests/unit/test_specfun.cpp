#include <doctest.h>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <random>

#include "szeta/error.hpp"
#include "szeta/specfun.hpp"

using namespace szeta;

namespace {

double lambda_by_trial_division(std::uint64_t n) {
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
    }
  }
  return n > 1 ? std::log(static_cast<double>(n)) : 0.0;
}

}  // namespace

TEST_CASE("sin_pi vanishes exactly at integers") {
  for (int n = -50; n <= 50; ++n) CHECK(sin_pi(static_cast<double>(n)) == 0.0);
  CHECK(sin_pi(0.5) == doctest::Approx(1.0).epsilon(1e-16));
  CHECK(sin_pi(1e6 + 0.25) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
}

TEST_CASE("real digamma and trigamma agree with Boost") {
  for (double x : {0.1, 0.5, 1.0, 2.7, 15.9, 16.1, 120.0, -0.5, -3.3}) {
    CHECK(digamma(x) == doctest::Approx(boost::math::digamma(x)).epsilon(1e-13));
    CHECK(trigamma(x) == doctest::Approx(boost::math::trigamma(x)).epsilon(1e-13));
  }
}

TEST_CASE("complex gamma family at frozen reference points") {
  // Reference values from a 30-digit evaluation, frozen.
  const cplx psi = digamma(cplx(0.3, 2.0));
  CHECK(std::abs(psi - cplx(0.687523593749103972, 1.672730211056628644)) < 1e-13);
  const cplx tri = trigamma(cplx(-2.5, 0.7));
  CHECK(std::abs(tri - cplx(0.159859120518793034, -0.072040523174889008)) < 1e-13);
  const cplx lg = log_gamma(cplx(0.25, 10.0));
  CHECK(std::abs(lg - cplx(-15.364592760295240141, 12.634193666938485786)) < 1e-12);
  CHECK(riemann_siegel_theta(100.0) == doctest::Approx(87.97216523178721963).epsilon(1e-13));
  CHECK(riemann_siegel_theta(1.0) == doctest::Approx(-1.76754795281229039).epsilon(1e-13));
}

TEST_CASE("digamma recurrence and log-gamma against lgamma") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(-8.0, 30.0), im(-40.0, 40.0);
  for (int i = 0; i < 200; ++i) {
    const cplx z(re(rng), im(rng));
    if (std::abs(z.imag()) < 0.1) continue;
    CHECK(std::abs(digamma(z + 1.0) - digamma(z) - 1.0 / z) < 1e-12 * std::max(1.0, std::abs(digamma(z))));
  }
  for (double x : {0.3, 1.0, 2.5, 7.0, 33.3, 170.2}) {
    CHECK(log_gamma(cplx(x, 0.0)).real() == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
  }
}

TEST_CASE("theta matches its asymptotic expansion at large t") {
  const double t = 1000.0;
  const double asym = t / 2 * std::log(t / (2 * kPi)) - t / 2 - kPi / 8 + 1 / (48 * t) + 7 / (5760 * t * t * t);
  CHECK(riemann_siegel_theta(t) == doctest::Approx(asym).epsilon(1e-14));
}

TEST_CASE("poles raise PoleError") {
  CHECK_THROWS_AS(digamma(cplx(0.0, 0.0)), PoleError);
  CHECK_THROWS_AS(digamma(cplx(-3.0, 0.0)), PoleError);
  CHECK_THROWS_AS(trigamma(cplx(-1.0, 0.0)), PoleError);
  CHECK_NOTHROW(digamma(cplx(-3.0, 1e-3)));
}

TEST_CASE("Mangoldt table matches trial division") {
  const MangoldtTable table(20000);
  double psi = 0.0;
  for (std::uint64_t n = 1; n <= 20000; ++n) {
    const double expect = lambda_by_trial_division(n);
    REQUIRE(table.lambda(n) == doctest::Approx(expect).epsilon(1e-15));
    psi += expect;
    if (n % 997 == 0) CHECK(table.chebyshev_psi(n) == doctest::Approx(psi).epsilon(1e-12));
  }
  const auto pp = table.prime_power(3u * 3u * 3u * 3u * 3u);
  REQUIRE(pp);
  CHECK(pp->prime == 3);
  CHECK(pp->exponent == 5);
  CHECK_FALSE(table.prime_power(12));
  CHECK(table.is_prime(19997));
  CHECK_FALSE(table.is_prime(19999));
}

TEST_CASE("prime powers are visited in a fixed order") {
  const MangoldtTable table(1000);
  std::vector<std::uint64_t> first, second;
  table.for_each_prime_power(1000, [&](std::uint64_t n, std::uint64_t, unsigned) { first.push_back(n); });
  table.for_each_prime_power(1000, [&](std::uint64_t n, std::uint64_t, unsigned) { second.push_back(n); });
  CHECK(first == second);
  CHECK(first.size() == 168 + 25);
  CHECK(first[0] == 2);
  CHECK(first[1] == 4);
}

TEST_CASE("sieve limits") {
  CHECK_THROWS_AS(MangoldtTable(1), PreconditionError);
  CHECK_THROWS_AS(MangoldtTable(5000, 1000), CapacityError);
  // psi(x) <= 1.04 x, the inequality used for prime-sum truncation.
  const MangoldtTable table(1'000'000);
  for (std::uint64_t x = 100; x <= 1'000'000; x *= 10) CHECK(table.chebyshev_psi(x) <= 1.04 * static_cast<double>(x));
}

TEST_CASE("error budgets add and keep the dominant source") {
  ErrorBudget a{1e-10, 0.0, ErrorBudget::Source::Quadrature};
  ErrorBudget b{1e-8, 0.0, ErrorBudget::Source::TailEstimate};
  const auto c = a + b;
  CHECK(c.absolute == doctest::Approx(1.01e-8));
  CHECK(c.source == ErrorBudget::Source::TailEstimate);
}
