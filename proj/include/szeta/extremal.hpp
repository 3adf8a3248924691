#pragma once

// Beurling's majorant/minorant of sgn(x), Selberg's interval functions built
// from them, and the arctan kernels F and G.
//
// H(z) = (sin pi z / pi)^2 { sum_m sgn(m)/(z-m)^2 + 2/z } is evaluated in
// closed form through the trigamma identity
//
//   sum_m sgn(m)/(z-m)^2 = psi'(1-z) - psi'(1+z),
//
// which gives H(z) = 1 - (sin pi z / pi)^2 [psi'(z) + psi'(z+1) - 2/z].
// H is odd, so Re z < 0 is mapped through H(z) = -H(-z).

#include <cstddef>

#include "szeta/specfun.hpp"

namespace szeta {

enum class Bound { Minorant, Majorant };

inline double sign_of(Bound b) { return b == Bound::Majorant ? 1.0 : -1.0; }

/// For |y| >= 1: |H^{+-}(y) - sgn(y)| <= kBeurlingTailConstant / y^2.
inline constexpr double kBeurlingTailConstant = 1.3 / (kPi * kPi);

/// Fejer kernel (sin pi z / pi z)^2, equal to 1 at z = 0.
double fejer(double x);
cplx fejer(cplx z);

/// The odd part H(z), without the +- Fejer term.
double beurling_core(double x);
cplx beurling_core(cplx z);

/// H^{+-}(x) = H(x) +- (sin pi x / pi x)^2.
double beurling_h(double x, Bound b);
cplx beurling_h(cplx z, Bound b);

struct BeurlingPair {
  double minorant(double x) const { return beurling_h(x, Bound::Minorant); }
  double majorant(double x) const { return beurling_h(x, Bound::Majorant); }
};

/// Fourier transform of (sin pi x / pi x)^2: max(1 - |eta|, 0).
double fejer_hat(double eta);

/// Fourier transform of J = H'/2: pi eta (1-|eta|) cot(pi eta) + |eta| on
/// |eta| < 1, zero outside, J_hat(0) = 1.
double vaaler_j_hat(double eta);

/// Interval indicator of [-t, t] with value 1/2 at the endpoints.
double interval_indicator(double half_length, double x);

/// R^{+-}(z) = (1/2){H^{+-}(delta (t + z)) + H^{+-}(delta (t - z))}.
class SelbergSystem {
 public:
  /// Throws PreconditionError unless t > 0 and delta > 0.
  SelbergSystem(double half_length, double type_param, Bound sign);

  double half_length() const noexcept { return t_; }
  double type_param() const noexcept { return delta_; }
  Bound sign() const noexcept { return sign_; }

  double operator()(double x) const;
  cplx operator()(cplx z) const;

  /// Closed form:
  ///   R_hat(xi) = J_hat(xi/delta) sin(2 pi t xi)/(pi xi) +- fejer_hat(xi/delta) cos(2 pi t xi)/delta,
  /// exactly zero for |xi| >= delta.
  double fourier(double xi) const;

  SelbergSystem with_sign(Bound b) const { return {t_, delta_, b}; }

 private:
  double t_;
  double delta_;
  Bound sign_;
};

double selberg_r(const SelbergSystem& sys, double x);
cplx selberg_r(const SelbergSystem& sys, cplx z);
double selberg_r_fourier(const SelbergSystem& sys, double xi);

// ---------------------------------------------------------------------------
// Measured quantities for each interval-majorant property.
// ---------------------------------------------------------------------------

struct MajorizationCheck {
  std::size_t samples = 0;
  std::size_t violations = 0;  // beyond `slack`
  double worst = 0.0;          // most negative (R+ - chi) or (chi - R-)
};

/// Low-discrepancy sample of R vs chi_[-t,t]. Points concentrate near the
/// interval and also reach out to t + 1000/delta.
MajorizationCheck check_majorization(const SelbergSystem& sys, std::size_t samples,
                                     double slack = 1e-12);

/// Integral of |R - chi| over the real line: Gauss-Kronrod on
/// [0, t + 1000/delta] plus the mean-square tail of the Fejer terms.
Estimate<double> l1_defect(const SelbergSystem& sys);

/// Integral of |H^{+-} - sgn| over [-T, T] plus the analytic 1/x^2 tail.
Estimate<double> beurling_l1_defect(Bound b, double T);

/// max_{y in [0, ymax]} |R(iy)| e^{-2 pi delta y}.
double growth_constant(const SelbergSystem& sys, double ymax = 3.0, std::size_t samples = 301);

/// max over sampled |x| > t of |R(x)| / min(1, delta^{-2} (|x| - t)^{-2}).
double decay_constant(const SelbergSystem& sys, std::size_t samples = 20000);

/// Largest |R_hat(xi)| over a grid of xi >= delta (zero when the support is
/// exact).
double fourier_support_leak(const SelbergSystem& sys, std::size_t samples = 200);

/// max over a grid of xi in (0, delta] of delta |R_hat(xi) - sin(2 pi t xi)/(pi xi)|.
double fourier_sine_constant(const SelbergSystem& sys, std::size_t samples = 1000);

// ---------------------------------------------------------------------------
// Kernels
// ---------------------------------------------------------------------------

enum class Kernel { F, G };

/// F(x) = arctan(1/x) - x/(1+x^2), G(x) = F(x/2). Both set to 0 at x = 0
/// (mean of the one-sided limits +-pi/2).
double kernel_eval(Kernel k, double x);

}  // namespace szeta
