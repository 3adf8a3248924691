#include "szeta/extremal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "szeta/error.hpp"
#include "szeta/quadrature.hpp"

namespace szeta {

namespace {

// B_2 .. B_16, for psi'(x) + psi'(x+1) - 2/x = 2 sum_k B_{2k} / x^{2k+1}.
constexpr std::array<double, 8> kBernoulli = {
    1.0 / 6.0,  -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,  -3617.0 / 510.0};

template <class T>
T trigamma_pair_defect_asymptotic(T x) {
  const T inv = T(1.0) / x;
  const T inv2 = inv * inv;
  T pow = inv2 * inv;
  T sum = T(0.0);
  for (double b : kBernoulli) {
    sum += b * pow;
    pow *= inv2;
  }
  return T(2.0) * sum;
}

double trigamma_pair_defect(double x) {
  if (x >= 16.0) return trigamma_pair_defect_asymptotic(x);
  return trigamma(x) + trigamma(x + 1.0) - 2.0 / x;
}

cplx trigamma_pair_defect(cplx z) {
  if (std::abs(z) >= 16.0 && z.real() >= 0.5) return trigamma_pair_defect_asymptotic(z);
  return trigamma(z) + trigamma(z + 1.0) - 2.0 / z;
}

// Golden-ratio Kronecker sequence.
double kronecker(std::size_t k, double alpha) {
  const double v = 0.5 + static_cast<double>(k) * alpha;
  return v - std::floor(v);
}

}  // namespace

double fejer(double x) {
  if (x == 0.0) return 1.0;
  const double s = sin_pi(x) / (kPi * x);
  return s * s;
}

cplx fejer(cplx z) {
  if (z == cplx(0.0, 0.0)) return 1.0;
  const cplx s = sin_pi(z) / (kPi * z);
  return s * s;
}

double beurling_core(double x) {
  if (x == 0.0) return 0.0;
  if (x < 0.0) return -beurling_core(-x);
  const double s = sin_pi(x);
  if (s == 0.0) return 1.0;
  return 1.0 - s * s / (kPi * kPi) * trigamma_pair_defect(x);
}

cplx beurling_core(cplx z) {
  if (z == cplx(0.0, 0.0)) return 0.0;
  if (z.real() < 0.0) return -beurling_core(-z);
  if (z.imag() == 0.0) return beurling_core(z.real());
  const cplx s = sin_pi(z);
  return 1.0 - s * s / (kPi * kPi) * trigamma_pair_defect(z);
}

double beurling_h(double x, Bound b) { return beurling_core(x) + sign_of(b) * fejer(x); }

cplx beurling_h(cplx z, Bound b) { return beurling_core(z) + sign_of(b) * fejer(z); }

double fejer_hat(double eta) { return std::max(1.0 - std::abs(eta), 0.0); }

double vaaler_j_hat(double eta) {
  const double a = std::abs(eta);
  if (a >= 1.0) return 0.0;
  if (a == 0.0) return 1.0;
  if (a <= 0.5) return (1.0 - a) * (kPi * a / std::tan(kPi * a)) + a;
  // cot(pi a) = -cot(pi (1 - a)); keeps the (1 - a) cancellation exact.
  const double b = 1.0 - a;
  return -kPi * a * b / std::tan(kPi * b) + a;
}

double interval_indicator(double half_length, double x) {
  const double ax = std::abs(x);
  if (ax < half_length) return 1.0;
  if (ax == half_length) return 0.5;
  return 0.0;
}

SelbergSystem::SelbergSystem(double half_length, double type_param, Bound sign)
    : t_(half_length), delta_(type_param), sign_(sign) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw PreconditionError("SelbergSystem: half_length must be positive");
  }
  if (!(type_param > 0.0) || !std::isfinite(type_param)) {
    throw PreconditionError("SelbergSystem: type parameter delta must be positive");
  }
}

double SelbergSystem::operator()(double x) const {
  return 0.5 * (beurling_h(delta_ * (t_ + x), sign_) + beurling_h(delta_ * (t_ - x), sign_));
}

cplx SelbergSystem::operator()(cplx z) const {
  if (z.imag() == 0.0) return (*this)(z.real());
  return 0.5 * (beurling_h(delta_ * (t_ + z), sign_) + beurling_h(delta_ * (t_ - z), sign_));
}

double SelbergSystem::fourier(double xi) const {
  const double eta = xi / delta_;
  if (std::abs(eta) >= 1.0) return 0.0;
  const double sine = xi == 0.0 ? 2.0 * t_ : sin_pi(2.0 * t_ * xi) / (kPi * xi);
  const double cosine = std::cos(2.0 * kPi * t_ * xi);
  return vaaler_j_hat(eta) * sine + sign_of(sign_) * fejer_hat(eta) * cosine / delta_;
}

double selberg_r(const SelbergSystem& sys, double x) { return sys(x); }
cplx selberg_r(const SelbergSystem& sys, cplx z) { return sys(z); }
double selberg_r_fourier(const SelbergSystem& sys, double xi) { return sys.fourier(xi); }

MajorizationCheck check_majorization(const SelbergSystem& sys, std::size_t samples,
                                     double slack) {
  const double t = sys.half_length();
  const double d = sys.type_param();
  const double golden = std::numbers::phi - 1.0;
  const double root2 = std::numbers::sqrt2 - 1.0;
  const double near = t + 10.0 / d;
  const double far = 1000.0 / d;

  MajorizationCheck out;
  auto probe = [&](double x) {
    const double chi = interval_indicator(t, x);
    const double r = sys(x);
    const double margin = sys.sign() == Bound::Majorant ? r - chi : chi - r;
    ++out.samples;
    out.worst = std::min(out.worst, margin);
    if (margin < -slack) ++out.violations;
  };

  probe(0.0);
  probe(t);
  probe(-t);
  for (std::size_t k = 1; k <= samples; ++k) {
    const double u = kronecker(k, golden);
    if (k % 10 < 7) {
      probe((2.0 * u - 1.0) * near);
    } else {
      const double sgn = kronecker(k, root2) < 0.5 ? -1.0 : 1.0;
      probe(sgn * (t + far * u * u));
    }
  }
  return out;
}

Estimate<double> l1_defect(const SelbergSystem& sys) {
  const double t = sys.half_length();
  const double d = sys.type_param();
  const double reach = t + 1000.0 / d;
  quad::Options opt;
  opt.max_piece = std::min(0.5, 0.25 / d);
  opt.relative_tol = 1e-11;
  opt.absolute_tol = 1e-11;
  const auto body = quad::integrate(
      [&](double x) { return std::abs(sys(x) - interval_indicator(t, x)); }, 0.0, reach, opt,
      {t});
  // Mean of sin^2 is 1/2: each Fejer term leaves 1/(2 pi^2 delta^2 a) past distance a.
  const double c = 1.0 / (2.0 * kPi * kPi * d * d);
  const double tail = c * (1.0 / (reach + t) + 1.0 / (reach - t));
  ErrorBudget budget;
  budget.absolute = 2.0 * body.error + tail / (d * (reach - t)) / (d * (reach - t)) + tail * 1e-3;
  budget.source = ErrorBudget::Source::Quadrature;
  return {2.0 * body.value + tail, budget};
}

Estimate<double> beurling_l1_defect(Bound, double T) {
  // |H+-(-x) - sgn(-x)| = |H-+(x) - sgn(x)|, so both signs give the same
  // integral: int_0^T |H+ - sgn| + |H- - sgn|.
  quad::Options opt;
  opt.max_piece = 0.25;
  opt.relative_tol = 1e-11;
  opt.absolute_tol = 1e-11;
  const auto body = quad::integrate(
      [](double x) {
        return std::abs(beurling_h(x, Bound::Majorant) - 1.0) +
               std::abs(beurling_h(x, Bound::Minorant) - 1.0);
      },
      0.0, T, opt);
  const double tail = 1.0 / (kPi * kPi * T);
  ErrorBudget budget;
  budget.absolute = body.error + tail / (T * T);
  budget.source = ErrorBudget::Source::Quadrature;
  return {body.value + tail, budget};
}

double growth_constant(const SelbergSystem& sys, double ymax, std::size_t samples) {
  const double d = sys.type_param();
  double worst = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double y = ymax * static_cast<double>(k) / static_cast<double>(samples - 1);
    const double v = std::abs(sys(cplx(0.0, y))) * std::exp(-2.0 * kPi * d * y);
    worst = std::max(worst, v);
  }
  return worst;
}

double decay_constant(const SelbergSystem& sys, std::size_t samples) {
  const double t = sys.half_length();
  const double d = sys.type_param();
  const double lo = std::log(1e-3 / d);
  const double hi = std::log(1e4 / d);
  double worst = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double dist =
        std::exp(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(samples - 1));
    const double envelope = std::min(1.0, 1.0 / (d * d * dist * dist));
    worst = std::max(worst, std::abs(sys(t + dist)) / envelope);
  }
  return worst;
}

double fourier_support_leak(const SelbergSystem& sys, std::size_t samples) {
  const double d = sys.type_param();
  double worst = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double xi = d * (1.0 + 3.0 * static_cast<double>(k) / static_cast<double>(samples - 1));
    worst = std::max({worst, std::abs(sys.fourier(xi)), std::abs(sys.fourier(-xi))});
  }
  return worst;
}

double fourier_sine_constant(const SelbergSystem& sys, std::size_t samples) {
  const double t = sys.half_length();
  const double d = sys.type_param();
  double worst = 0.0;
  for (std::size_t k = 1; k <= samples; ++k) {
    const double xi = d * static_cast<double>(k) / static_cast<double>(samples);
    const double main = sin_pi(2.0 * t * xi) / (kPi * xi);
    worst = std::max(worst, d * std::abs(sys.fourier(xi) - main));
  }
  return worst;
}

namespace {

// arctan(u) - u/(1+u^2); the direct form cancels badly for small u.
double arctan_defect(double u) {
  if (std::abs(u) >= 0.5) return std::atan(u) - u / (1.0 + u * u);
  // sum_{k>=1} (-1)^{k+1} (2k/(2k+1)) u^{2k+1}
  const double u2 = u * u;
  double pow = u2 * u;
  double sum = 0.0;
  for (int j = 1; j < 60; ++j) {
    const double term = (j % 2 ? 1.0 : -1.0) * (2.0 * j / (2.0 * j + 1.0)) * pow;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    pow *= u2;
  }
  return sum;
}

}  // namespace

double kernel_eval(Kernel k, double x) {
  if (x == 0.0) return 0.0;
  // F: u = 1/x.  G(x) = arctan(2/x) - 2x/(4+x^2): u = 2/x.
  return arctan_defect((k == Kernel::F ? 1.0 : 2.0) / x);
}

}  // namespace szeta
