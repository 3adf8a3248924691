#pragma once

// S(t, pi) against the conditional envelope, the majorant/minorant sandwich on
// the zero count, kernel-sum representations of S, and the central-order and
// lowest-zero main terms.

#include <optional>
#include <utility>
#include <vector>

#include "szeta/critical_line.hpp"
#include "szeta/explicit_formula.hpp"
#include "szeta/extremal.hpp"
#include "szeta/lfunc.hpp"

namespace szeta {

struct BoundReport {
  double t = 0.0;
  double s_value = 0.0;
  double envelope = 0.0;
  double tuned_delta = 0.0;     // Delta from the tuning rule at this height
  double delta_used = 0.0;      // Delta of the sandwich functions
  double count = 0.0;           // N(t, pi) over [-t, t] (2 N(t) for zeta)
  // Sums of R^{-+} over the computed zeros. Exact brackets of `count`:
  // R^+ >= 0 and R^- <= 0 outside [-t, t].
  double partial_lower = 0.0, partial_upper = 0.0;
  // Full sums: partial plus a smooth estimate of the zeros beyond zero_height.
  double sandwich_lower = 0.0, sandwich_upper = 0.0;
  double tail_bound = 0.0;      // certified bound on each tail
  std::optional<double> formula_lower, formula_upper;
  double slack = 0.0;           // envelope - |s_value|
  bool sandwich_ran = false;
};

struct KernelSumReport {
  double t = 0.0;
  double kernel_sum = 0.0;
  double s_value = 0.0;
  double discrepancy = 0.0;
  double tail_estimate = 0.0;
};

struct EnvelopeOptions {
  double conductor_exponent = 3.0;  // C^{a/m}; any a > e
};

/// Main term (1/4 + theta/2) log C(t) / log log C(t)^{a/m} and the tuned
/// Delta = (LL - 2 log LL) / (pi (1 + 2 theta)). ThresholdError when log log log <= 0.
std::pair<double, double> theorem_envelope(const LFunctionDescriptor& d, double t,
                                           const EnvelopeOptions& opt = {});

struct SandwichOptions {
  bool formula_route = true;        // skipped automatically when Delta is too large for the sieve
  FormulaOptions formula;
};

/// Self-dual descriptors only (PreconditionError otherwise). Needs zeros
/// beyond t + 1/Delta (CompletenessError).
BoundReport sandwich_check(const LFunctionDescriptor& d, const ZeroSet& zs, double t, double delta,
                           const SandwichOptions& opt = {});

struct ScanOptions {
  unsigned workers = 1;
  double sandwich_delta = 1.0;
  EnvelopeOptions envelope;
};

/// Sandwich columns are filled for self-dual descriptors only.
std::vector<BoundReport> scan_s_bound(const LFunctionDescriptor& d, const ZeroSet& zs,
                                      const std::vector<double>& t_grid, const ScanOptions& opt = {});

/// F for zeta, G for Dirichlet and abstract descriptors.
Kernel kernel_for(const LFunctionDescriptor& d);

/// Bound on (1/pi) sum_{|gamma| > T} |K(t - gamma)| from the zero density.
double kernel_tail_bound(const LFunctionDescriptor& d, Kernel k, double t, double T);

/// CompletenessError unless kernel_tail_bound < 1e-6 at every grid point.
std::vector<KernelSumReport> kernel_sum_check(const LFunctionDescriptor& d, const ZeroSet& zs,
                                              const std::vector<double>& t_grid, unsigned workers = 1);

struct CentralOrderReport {
  double bound = 0.0;
  std::optional<int> actual;  // known when L(1/2) is visibly nonzero
};

/// (1/2 + theta) log C / log log C^{a/m}.
CentralOrderReport central_order_bound(const LFunctionDescriptor& d, const EnvelopeOptions& opt = {});

struct LowestZeroReport {
  double bound = 0.0;      // (1/2 + theta) pi / LL
  double allowance = 0.0;  // pi LLL / LL^2, the O-term with constant 1
  double actual = 0.0;     // min |gamma|
  double slack = 0.0;      // actual - bound
  bool holds = false;      // actual <= bound + allowance
};

/// ThresholdError when LLL <= 0 or bound + allowance > 1 (the argument
/// needs a zero in 0 < t <= 1).
LowestZeroReport lowest_zero_bound(const LFunctionDescriptor& d, const ZeroSet& zs,
                                   const EnvelopeOptions& opt = {});

}  // namespace szeta
