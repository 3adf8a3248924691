#pragma once

// Evaluation of zeta and Dirichlet L on and near the critical line, Hardy Z,
// the argument function S(t) by continuous variation, zero location and
// zero-set bookkeeping.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "szeta/lfunc.hpp"

namespace szeta {

/// sum_{n >= 0} (n + x)^{-s} by Euler-Maclaurin at x with six Bernoulli
/// corrections. With `drop_pole` the constant -1/(s-1) is removed, which
/// leaves a function that is regular at s = 1.
cplx em_tail(cplx s, double x, bool drop_pole = false);

/// zeta(s) with N = max(20, 2|t|) direct terms. PoleError at s = 1.
cplx zeta(cplx s);

/// L(s, pi) for zeta and Dirichlet descriptors.
cplx l_value(const LFunctionDescriptor& d, cplx s);

/// Continuous phase of the gamma factor on the critical line:
/// (t/2) log N + sum_j Im log Gamma_R(1/2 + it + mu_j).
double gamma_phase(const LFunctionDescriptor& d, double t);

/// Z(t) = kappa^{-1/2} e^{i phase(t)} L(1/2 + it), real for |kappa| = 1.
/// This is Lambda(1/2 + it) rotated by kappa^{-1/2} and divided by the
/// positive factor |N^{1/4} prod Gamma_R|. PrecisionError if the imaginary
/// residue exceeds 1e-8 max(|Z|, 1).
double hardy_z(const LFunctionDescriptor& d, double t);

struct ArgumentTrace {
  double t = 0.0;
  double value = 0.0;
  std::size_t path_points = 0;
  ErrorBudget budget;
  bool at_zero = false;  // symmetric-limit value was used
};

/// S(t, pi) = (1/pi) arg L(1/2 + it) along 2 -> 2 + it -> 1/2 + it.
/// PrecisionError when step refinement is exhausted.
ArgumentTrace argument_s(const LFunctionDescriptor& d, double t);

/// (1/pi)(phase(t) - phase(-t)) + 2 r(pi): the smooth part of N(t, pi).
double smooth_count(const LFunctionDescriptor& d, double t);

/// smooth_count + S(t, pi) + S(t, dual pi): zeros with |gamma| <= t,
/// counted over the full line.
double counting_formula(const LFunctionDescriptor& d, double t);

/// (1/2pi) x change in arg Lambda(s, pi) around the rectangle
/// [-1/2, 3/2] x [lo, hi]. The corners must avoid zeros.
double contour_count(const LFunctionDescriptor& d, double lo, double hi);

enum class Provenance { Computed, Ingested };

struct ZeroSet {
  std::string descriptor_id;
  // Self-dual: positive ordinates only. Otherwise signed over [-T, T].
  std::vector<double> ordinates;
  bool full_line = false;
  double complete_to = 0.0;
  Provenance provenance = Provenance::Computed;
  double precision = 1e-9;
  bool completeness_uncertain = false;

  /// All ordinates with |gamma| <= T over the full line, ascending.
  std::vector<double> signed_ordinates(double T) const;
};

struct ZeroSearchOptions {
  double height_cap = 0.0;  // 0: 1e4 for zeta, 1e3 otherwise
  double block = 10.0;      // certification interval
  double refine_tol = 1e-9;
  unsigned max_halvings = 4;
};

/// Sign changes of Z refined to 1e-9 and certified blockwise against
/// round(counting_formula). CapacityError above the height cap.
ZeroSet find_zeros(const LFunctionDescriptor& d, double T, const ZeroSearchOptions& opt = {});

/// Published-table layout: one ordinate per line, ascending, `#` comments.
/// The first 20 entries are cross-checked against computed zeros to 1e-4.
ZeroSet ingest_zeros(const std::filesystem::path& path, const LFunctionDescriptor& d);
ZeroSet ingest_zeros_text(const std::string& text, const LFunctionDescriptor& d,
                          bool cross_check = true);

/// N(t, pi) over [-t, t] with weight 1/2 at |gamma| = t. For zeta this is
/// 2 N(t). CompletenessError if t > complete_to.
double count_zeros(const ZeroSet& zs, double t);

/// N(t): ordinates in (0, t], weight 1/2 at gamma = t.
double count_positive(const ZeroSet& zs, double t);

/// Cache file: `# descriptor=<hash> complete_to=<T>` then CSV
/// index,ordinate,precision.
void write_zero_cache(const std::filesystem::path& path, const ZeroSet& zs);

/// nullopt when the file is missing or was written for another descriptor.
std::optional<ZeroSet> read_zero_cache(const std::filesystem::path& path,
                                       const LFunctionDescriptor& d);

std::filesystem::path zero_cache_path(const std::filesystem::path& dir,
                                      const LFunctionDescriptor& d);

/// Cached zeros reaching T, computing and storing them when needed. An
/// empty `dir` disables caching.
ZeroSet load_or_find_zeros(const LFunctionDescriptor& d, double T,
                           const std::filesystem::path& dir);

}  // namespace szeta
