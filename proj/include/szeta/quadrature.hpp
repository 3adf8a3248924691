#pragma once

// Thin layer over Boost's adaptive Gauss-Kronrod rule. Intervals are first
// cut at the caller's breakpoints and into pieces no wider than
// `max_piece`, so oscillatory or sharply peaked integrands get resolved
// without relying on the adaptive bisection to discover the structure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace szeta::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;  // sum of per-piece Kronrod error estimates
};

struct ComplexResult {
  std::complex<double> value;
  double error = 0.0;
};

struct Options {
  double max_piece = 1.0;
  double relative_tol = 1e-12;
  double absolute_tol = 0.0;  // spread over pieces in proportion to width
  unsigned max_depth = 12;
};

inline std::vector<double> split_points(double a, double b, std::vector<double> breaks,
                                        double max_piece) {
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = std::max(a, breaks[i]);
    const double hi = std::min(b, breaks[i + 1]);
    if (!(hi > lo)) continue;
    const auto pieces = static_cast<std::size_t>(std::ceil((hi - lo) / max_piece));
    for (std::size_t k = 0; k < std::max<std::size_t>(pieces, 1); ++k) {
      out.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(pieces ? pieces : 1));
    }
  }
  out.push_back(b);
  return out;
}

template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {},
                 std::vector<double> breaks = {}) {
  using boost::math::quadrature::gauss_kronrod;
  Result r;
  if (!(b > a)) return r;
  const auto pts = split_points(a, b, std::move(breaks), opt.max_piece);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(pts[i + 1] > pts[i])) continue;
    double err = 0.0;
    const double width = pts[i + 1] - pts[i];
    double v = gauss_kronrod<double, 21>::integrate(f, pts[i], pts[i + 1], 0, 0.0, &err);
    const double abs_goal = opt.absolute_tol * width / (b - a);
    if (err > abs_goal && err > opt.relative_tol * std::abs(v)) {
      const double rel = std::max(opt.relative_tol, abs_goal / std::max(std::abs(v), 1e-300));
      v = gauss_kronrod<double, 21>::integrate(f, pts[i], pts[i + 1], opt.max_depth, rel, &err);
    }
    r.value += v;
    r.error += err;
  }
  return r;
}

template <class F>
ComplexResult integrate_complex(F&& f, double a, double b, const Options& opt = {},
                                std::vector<double> breaks = {}) {
  const auto re = integrate([&](double x) { return std::real(f(x)); }, a, b, opt, breaks);
  const auto im = integrate([&](double x) { return std::imag(f(x)); }, a, b, opt, breaks);
  return {{re.value, im.value}, re.error + im.error};
}

}  // namespace szeta::quad
