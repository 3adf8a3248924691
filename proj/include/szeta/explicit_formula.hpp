#pragma once

// Both sides of the explicit formula
//
//   sum_rho h((rho - 1/2)/i) = r {h(1/(2i)) + h(-1/(2i))}
//       + (1/pi) int h(u) Re L'/L(1/2 + iu, pi_inf) du
//       - (1/2pi) sum_n n^{-1/2} {Lambda_pi(n) h^(log n/2pi) + Lambda_dual(n) h^(-log n/2pi)}
//       - (spectral corrections for -1 < Re mu_j <= -1/2)
//
// with h^(xi) = int h(x) e^{-2 pi i x xi} dx.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "szeta/critical_line.hpp"
#include "szeta/extremal.hpp"
#include "szeta/lfunc.hpp"

namespace szeta {

struct TestFunction {
  std::string name;
  std::function<cplx(cplx)> eval;
  std::function<cplx(double)> fourier;
  std::optional<double> band_limit;
  // Nonincreasing bound on |h^(xi)| for xi >= 0; needed without a band limit.
  std::function<double(double)> fourier_envelope;

  // Integrals use h on [-core_radius, core_radius] and `tail_mean` outside
  // (the local average of h; empty means h is negligible there).
  double core_radius = 0.0;
  std::function<double(double)> tail_mean;
  std::vector<double> breaks;
  double max_piece = 0.5;

  // For |u| >= T: |h(u)| <= A |u|^{-(1 + delta)}. Returns {A, delta}.
  std::function<std::pair<double, double>(double)> decay;
  double strip_width = 1.0;
};

/// h(u) = exp(-pi ((u - center)/width)^2), h^(xi) = width e^{-pi width^2 xi^2} e^{-2 pi i center xi}.
TestFunction gaussian_test(double center, double width);

/// R^{+-} of the system, band limited to delta.
TestFunction selberg_test(const SelbergSystem& sys);

/// u -> h(u - tau).
TestFunction shifted(const TestFunction& h, double tau);

/// a h1 + b h2 for real a, b.
TestFunction combine(double a, const TestFunction& h1, double b, const TestFunction& h2);

/// |quadrature of h(u) e^{-2 pi i u xi} - h^(xi)|.
double fourier_consistency(const TestFunction& h, double xi);

struct FormulaOptions {
  double prime_tol = 1e-7;                     // truncation bound for non band-limited h
  std::uint64_t sieve_cap = MangoldtTable::kDefaultCap;
  double tolerance = 0.0;                      // > 0: BudgetError if the budget exceeds it
};

struct ExplicitFormulaReport {
  cplx zero_sum;
  cplx pole_terms;
  cplx archimedean;
  cplx prime_sum;             // (1/2pi) sum n^{-1/2} {...}, entering with a minus sign
  cplx spectral_correction;   // entering with a minus sign
  cplx residual;              // zero - pole - arch + prime + spectral
  cplx zero_tail;             // smooth estimate of zeros beyond zero_height, part of zero_sum
  ErrorBudget budget;
  double zero_height = 0.0;
  std::uint64_t prime_cutoff = 0;
  std::size_t zeros_used = 0;
};

/// Evaluates every block for h(u - shift).
ExplicitFormulaReport evaluate_formula(const LFunctionDescriptor& d, const ZeroSet& zs,
                                       const TestFunction& h, double shift = 0.0,
                                       const FormulaOptions& opt = {});

/// Sieve shared between evaluations; grows on demand up to `cap`.
std::shared_ptr<const MangoldtTable> shared_mangoldt(std::uint64_t limit,
                                                     std::uint64_t cap = MangoldtTable::kDefaultCap);

std::string report_csv_header();
std::string report_csv_row(const std::string& label, const ExplicitFormulaReport& r);
std::string report_text(const std::string& label, const ExplicitFormulaReport& r);

}  // namespace szeta
