#include <doctest.h>

#include <cmath>
#include <random>

#include "szeta/extremal.hpp"
#include "szeta/quadrature.hpp"

using namespace szeta;

namespace {

// (sin pi z/pi)^2 {sum_{|m|<=M} sgn(m)/(z-m)^2 + 2/z}, summed symmetrically,
// with the integral tail for |m| > M. H^{+-} adds +-(sin pi z/pi z)^2.
double beurling_series(double z) {
  const int M = static_cast<int>(std::max(1000.0, 10.0 * std::abs(z)));
  double sum = 0.0;
  for (int m = M; m >= 1; --m) sum += 1.0 / ((z - m) * (z - m)) - 1.0 / ((z + m) * (z + m));
  sum += 1.0 / (M + 0.5 - z) - 1.0 / (M + 0.5 + z);
  const double s = std::sin(kPi * z) / kPi;
  return s * s * (sum + 2.0 / z);
}

double sine_transform_oracle(const SelbergSystem& sys, double xi) {
  // 2 int_0^X R(x) cos(2 pi x xi) dx. Beyond X, R averages to
  // +-(1/(4 pi^2 Delta^2)) {(x+t)^-2 + (x-t)^-2}, which only matters at xi = 0.
  quad::Options opt;
  opt.max_piece = std::min(0.25, 0.125 / std::max(xi, 1e-9));
  opt.relative_tol = 1e-12;
  opt.absolute_tol = 1e-11;
  const double X = sys.half_length() + 4000.0 / sys.type_param();
  const double body = 2.0 * quad::integrate([&](double x) { return sys(x) * std::cos(2 * kPi * x * xi); }, 0.0,
                                            X, opt, {sys.half_length()})
                                .value;
  if (xi != 0.0) return body;
  const double t = sys.half_length(), d = sys.type_param();
  return body + 2.0 * sign_of(sys.sign()) / (4 * kPi * kPi * d * d) * (1.0 / (X + t) + 1.0 / (X - t));
}

}  // namespace

TEST_CASE("Beurling H at the origin and at integers") {
  CHECK(beurling_h(0.0, Bound::Majorant) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(beurling_h(0.0, Bound::Minorant) == doctest::Approx(-1.0).epsilon(1e-14));
  for (int n : {-7, -2, -1, 1, 3, 40}) {
    CHECK(beurling_h(static_cast<double>(n), Bound::Majorant) == doctest::Approx(n > 0 ? 1.0 : -1.0).epsilon(1e-14));
    CHECK(beurling_h(static_cast<double>(n), Bound::Minorant) == doctest::Approx(n > 0 ? 1.0 : -1.0).epsilon(1e-14));
  }
}

TEST_CASE("closed-form H agrees with the truncated series") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-60.0, 60.0);
  for (int i = 0; i < 300; ++i) {
    const double x = dist(rng);
    if (std::abs(x - std::round(x)) < 1e-3) continue;
    const double core = beurling_series(x);
    const double sinc = std::sin(kPi * x) / (kPi * x);
    CHECK(std::abs(beurling_h(x, Bound::Majorant) - (core + sinc * sinc)) < 1e-10);
    CHECK(std::abs(beurling_h(x, Bound::Minorant) - (core - sinc * sinc)) < 1e-10);
  }
}

TEST_CASE("Beurling L1 distance to sgn is one") {
  for (Bound b : {Bound::Minorant, Bound::Majorant}) {
    CHECK(beurling_l1_defect(b, 1000.0).value == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("Selberg functions are even and bracket the interval at 0") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-200.0, 200.0);
  const SelbergSystem sys(5.0, 2.0, Bound::Majorant);
  for (int i = 0; i < 1000; ++i) {
    const double x = dist(rng);
    CHECK(sys(x) == doctest::Approx(sys(-x)).epsilon(1e-13));
  }
  for (double t : {1.0, 2.0, 5.0}) {
    for (double d : {1.0, 2.0, 4.0}) {
      CHECK(SelbergSystem(t, d, Bound::Majorant)(0.0) >= 1.0);
      CHECK(SelbergSystem(t, d, Bound::Minorant)(0.0) <= 1.0);
    }
  }
}

TEST_CASE("majorization and L1 identity") {
  for (Bound b : {Bound::Minorant, Bound::Majorant}) {
    const SelbergSystem sys(1.0, 2.0, b);
    const auto m = check_majorization(sys, 20000);
    CHECK(m.violations == 0);
    CHECK(l1_defect(sys).value == doctest::Approx(0.5).epsilon(2e-4));
  }
  // independence of t
  const double a = l1_defect(SelbergSystem(1.0, 4.0, Bound::Majorant)).value;
  const double c = l1_defect(SelbergSystem(37.0, 4.0, Bound::Majorant)).value;
  CHECK(std::abs(a - c) * 4.0 < 1e-4);
}

TEST_CASE("Fourier transform: support, value at zero, quadrature oracle") {
  for (Bound b : {Bound::Minorant, Bound::Majorant}) {
    const SelbergSystem sys(3.0, 2.0, b);
    CHECK(sys.fourier(2.1) == 0.0);
    CHECK(sys.fourier(-2.0) == 0.0);
    CHECK(sys.fourier(50.0) == 0.0);
    CHECK(fourier_support_leak(sys) == 0.0);
    CHECK(sys.fourier(0.0) == doctest::Approx(6.0 + sign_of(b) / 2.0).epsilon(1e-12));
    for (double xi : {0.0, 0.13, 0.7, 1.55, 1.95}) {
      CHECK(std::abs(sys.fourier(xi) - sine_transform_oracle(sys, xi)) < 1e-6);
    }
  }
}

TEST_CASE("recorded constants for growth, decay and the sine approximation are finite") {
  for (double t : {1.0, 5.0, 20.0}) {
    for (double d : {1.0, 4.0, 16.0}) {
      const SelbergSystem sys(t, d, Bound::Majorant);
      CHECK(std::isfinite(fourier_sine_constant(sys)));
      CHECK(fourier_sine_constant(sys) < 10.0);
    }
  }
  const SelbergSystem sys(10.0, 2.0, Bound::Minorant);
  CHECK(std::isfinite(growth_constant(sys)));
  CHECK(decay_constant(sys) < 1.0);
}

TEST_CASE("kernels F and G") {
  CHECK(kernel_eval(Kernel::F, 1.0) == doctest::Approx(kPi / 4 - 0.5).epsilon(1e-15));
  CHECK(kernel_eval(Kernel::G, 2.0) == doctest::Approx(kPi / 4 - 0.5).epsilon(1e-15));
  CHECK(kernel_eval(Kernel::F, 0.0) == 0.0);
  CHECK(kernel_eval(Kernel::G, 0.0) == 0.0);
  CHECK(std::pow(1e3, 3) * kernel_eval(Kernel::F, 1e3) == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-100.0, 100.0);
  for (int i = 0; i < 10000; ++i) {
    const double x = dist(rng);
    REQUIRE(std::abs(kernel_eval(Kernel::G, x) - kernel_eval(Kernel::F, x / 2)) < 1e-14);
    REQUIRE(kernel_eval(Kernel::F, -x) == -kernel_eval(Kernel::F, x));
  }
}
