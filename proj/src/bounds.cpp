#include "szeta/bounds.hpp"

#include <cmath>
#include <limits>
#include <thread>

#include "szeta/error.hpp"
#include "szeta/quadrature.hpp"

namespace szeta {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct LogLogs {
  double log_c, ll, lll;
};

LogLogs loglogs(const LFunctionDescriptor& d, double log_c, double a, const char* who) {
  const double l3 = a / d.degree * log_c;
  if (!(l3 > std::exp(1.0))) {
    throw ThresholdError(std::string(who) + ": log log log C^{a/m} <= 0, conductor too small");
  }
  const double ll = std::log(l3);
  return {log_c, ll, std::log(ll)};
}

// Zeros per unit height at u, one side of the line.
double density(const LFunctionDescriptor& d, double u) {
  return gamma_factor_logderiv(d, cplx(0.5, u)).real() / kPi;
}

// Assumed bound on |N(u) - smooth count| used in partial summation.
double count_error(const LFunctionDescriptor& d, double u) {
  return 0.5 * std::log(analytic_conductor(d, u)) + 1.0;
}

// Bound on sum_{gamma > T} f(gamma) for f positive and decreasing on [T, inf):
// int f dM + 2 E(T) f(T) + int (-f') E, by partial summation against the
// smooth count M.
template <class F, class DF>
double density_tail(const LFunctionDescriptor& d, double T, F&& f, DF&& minus_df) {
  quad::Options opt;
  opt.max_piece = 0.5;
  opt.relative_tol = 1e-8;
  opt.absolute_tol = 1e-16;
  const auto r = quad::integrate(
      [&](double s) {
        const double u = T * std::exp(s);
        return u * (f(u) * density(d, u) + minus_df(u) * count_error(d, u));
      },
      0.0, 80.0, opt);
  return r.value + r.error + 2.0 * count_error(d, T) * f(T);
}

// Smooth estimate of sum_{|gamma| > T} g(gamma) for an even integrand mean g.
template <class G>
double smooth_tail(const LFunctionDescriptor& d, double T, G&& g) {
  quad::Options opt;
  opt.max_piece = 0.5;
  opt.relative_tol = 1e-10;
  opt.absolute_tol = 1e-16;
  return quad::integrate(
             [&](double s) {
               const double u = T * std::exp(s);
               return u * (g(u) * density(d, u) + g(-u) * density(d, -u));
             },
             0.0, 80.0, opt)
      .value;
}

template <class F>
void parallel_for(std::size_t n, unsigned workers, F&& body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::pair<double, double> theorem_envelope(const LFunctionDescriptor& d, double t,
                                           const EnvelopeOptions& opt) {
  const auto L = loglogs(d, std::log(analytic_conductor(d, t)), opt.conductor_exponent, "theorem_envelope");
  const double envelope = (0.25 + 0.5 * d.theta) * L.log_c / L.ll;
  const double delta = (L.ll - 2.0 * L.lll) / (kPi * (1.0 + 2.0 * d.theta));
  return {envelope, delta};
}

BoundReport sandwich_check(const LFunctionDescriptor& d, const ZeroSet& zs, double t, double delta,
                           const SandwichOptions& opt) {
  if (!d.self_dual) {
    throw PreconditionError("sandwich_check: descriptor is not self-dual; only the kernel-sum and argument routes apply");
  }
  if (!(t > 0.0) || !(delta > 0.0)) throw PreconditionError("sandwich_check: need t > 0 and delta > 0");
  const double T = zs.complete_to;
  if (!(delta * (T - t) >= 1.0)) {
    throw CompletenessError("sandwich_check: zeros must extend beyond t + 1/delta");
  }
  const SelbergSystem plus(t, delta, Bound::Majorant);
  const SelbergSystem minus(t, delta, Bound::Minorant);

  BoundReport rep;
  rep.t = t;
  rep.delta_used = delta;
  rep.sandwich_ran = true;
  rep.count = count_zeros(zs, t);
  for (double g : zs.signed_ordinates(T)) {
    rep.partial_upper += plus(g);
    rep.partial_lower += minus(g);
  }

  const auto hp = selberg_test(plus);
  const auto hm = selberg_test(minus);
  rep.sandwich_upper = rep.partial_upper + smooth_tail(d, T, hp.tail_mean);
  rep.sandwich_lower = rep.partial_lower + smooth_tail(d, T, hm.tail_mean);

  const double c = kBeurlingTailConstant / (delta * delta);
  rep.tail_bound = 2.0 * density_tail(
                             d, T, [&](double u) { return c / ((u - t) * (u - t)); },
                             [&](double u) { return 2.0 * c / ((u - t) * (u - t) * (u - t)); });

  if (opt.formula_route && std::exp(2.0 * kPi * delta) <= static_cast<double>(opt.formula.sieve_cap)) {
    auto side = [&](const TestFunction& h) {
      const auto r = evaluate_formula(d, zs, h, 0.0, opt.formula);
      return (r.pole_terms + r.archimedean - r.prime_sum - r.spectral_correction).real();
    };
    rep.formula_upper = side(hp);
    rep.formula_lower = side(hm);
  }
  return rep;
}

std::vector<BoundReport> scan_s_bound(const LFunctionDescriptor& d, const ZeroSet& zs,
                                      const std::vector<double>& t_grid, const ScanOptions& opt) {
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0) || (i > 0 && !(t_grid[i] > t_grid[i - 1]))) {
      throw PreconditionError("scan_s_bound: grid must be positive and ascending");
    }
    if (t_grid[i] > zs.complete_to) throw CompletenessError("scan_s_bound: grid exceeds zero completeness");
  }
  std::vector<BoundReport> out(t_grid.size());
  SandwichOptions so;
  so.formula_route = false;
  parallel_for(t_grid.size(), opt.workers, [&](std::size_t i) {
    const double t = t_grid[i];
    BoundReport rep;
    if (d.self_dual && opt.sandwich_delta * (zs.complete_to - t) >= 1.0) {
      rep = sandwich_check(d, zs, t, opt.sandwich_delta, so);
    } else {
      rep.t = t;
      rep.count = count_zeros(zs, t);
      rep.partial_lower = rep.partial_upper = rep.sandwich_lower = rep.sandwich_upper = kNaN;
      rep.tail_bound = kNaN;
      rep.delta_used = opt.sandwich_delta;
    }
    rep.s_value = argument_s(d, t).value;
    try {
      const auto [env, delta] = theorem_envelope(d, t, opt.envelope);
      rep.envelope = env;
      rep.tuned_delta = delta;
    } catch (const ThresholdError&) {
      rep.envelope = rep.tuned_delta = kNaN;
    }
    rep.slack = rep.envelope - std::abs(rep.s_value);
    out[i] = rep;
  });
  return out;
}

Kernel kernel_for(const LFunctionDescriptor& d) {
  return d.kind == LKind::Zeta ? Kernel::F : Kernel::G;
}

double kernel_tail_bound(const LFunctionDescriptor& d, Kernel k, double t, double T) {
  // F(x) <= 2/(3x^3) for x >= 1 (alternating series), G(x) = F(x/2).
  const double scale = k == Kernel::F ? 1.0 : 2.0;
  if (!(T - std::abs(t) >= scale)) return std::numeric_limits<double>::infinity();
  const double c = 2.0 / 3.0 * scale * scale * scale;
  const double s = std::abs(t);
  const double side = density_tail(
      d, T, [&](double u) { return c / std::pow(u - s, 3); },
      [&](double u) { return 3.0 * c / std::pow(u - s, 4); });
  return 2.0 * side / kPi;
}

std::vector<KernelSumReport> kernel_sum_check(const LFunctionDescriptor& d, const ZeroSet& zs,
                                              const std::vector<double>& t_grid, unsigned workers) {
  const Kernel k = kernel_for(d);
  const double T = zs.complete_to;
  for (double t : t_grid) {
    if (!(kernel_tail_bound(d, k, t, T) < 1e-6)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "kernel_sum_check: zeros to %g leave a kernel tail above 1e-6 at t = %g", T, t);
      throw CompletenessError(buf);
    }
  }
  const auto gammas = zs.signed_ordinates(T);
  std::vector<KernelSumReport> out(t_grid.size());
  parallel_for(t_grid.size(), workers, [&](std::size_t i) {
    KernelSumReport rep;
    rep.t = t_grid[i];
    double sum = 0.0;
    for (double g : gammas) sum += kernel_eval(k, rep.t - g);
    rep.tail_estimate = smooth_tail(d, T, [&](double u) { return kernel_eval(k, rep.t - u); }) / kPi;
    rep.kernel_sum = sum / kPi + rep.tail_estimate;
    rep.s_value = argument_s(d, rep.t).value;
    rep.discrepancy = rep.s_value - rep.kernel_sum;
    out[i] = rep;
  });
  return out;
}

CentralOrderReport central_order_bound(const LFunctionDescriptor& d, const EnvelopeOptions& opt) {
  const auto L = loglogs(d, std::log(analytic_conductor(d)), opt.conductor_exponent, "central_order_bound");
  CentralOrderReport rep;
  rep.bound = (0.5 + d.theta) * L.log_c / L.ll;
  if (d.kind != LKind::Abstract && std::abs(l_value(d, cplx(0.5, 0.0))) > 1e-6) rep.actual = 0;
  return rep;
}

LowestZeroReport lowest_zero_bound(const LFunctionDescriptor& d, const ZeroSet& zs,
                                   const EnvelopeOptions& opt) {
  const auto L = loglogs(d, std::log(analytic_conductor(d)), opt.conductor_exponent, "lowest_zero_bound");
  LowestZeroReport rep;
  rep.bound = (0.5 + d.theta) * kPi / L.ll;
  rep.allowance = kPi * L.lll / (L.ll * L.ll);
  if (rep.bound + rep.allowance > 1.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "lowest_zero_bound: bound %.4g + %.4g exceeds 1, conductor below the threshold",
                  rep.bound, rep.allowance);
    throw ThresholdError(buf);
  }
  if (zs.ordinates.empty()) throw PreconditionError("lowest_zero_bound: empty zero set");
  rep.actual = std::numeric_limits<double>::infinity();
  for (double g : zs.ordinates) rep.actual = std::min(rep.actual, std::abs(g));
  rep.slack = rep.actual - rep.bound;
  rep.holds = rep.actual <= rep.bound + rep.allowance;
  return rep;
}

}  // namespace szeta
