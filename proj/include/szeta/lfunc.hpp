#pragma once

// L-function descriptors (degree, conductor, gamma shifts, pole order,
// coefficient exponent, root number) and primitive Dirichlet characters.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "szeta/specfun.hpp"

namespace szeta {

/// Character of (Z/qZ)^* given by exponents on a fixed generator system:
/// one cyclic generator per odd prime power, -1 for 4 | q, and -1, 5 for
/// 8 | q. chi(g_i) = exp(2 pi i k_i / ord(g_i)).
class DirichletCharacter {
 public:
  static constexpr std::uint32_t kMaxModulus = 1'000'000;

  DirichletCharacter(std::uint32_t modulus, std::vector<std::uint32_t> exponents);

  /// Quadratic character (n/p) for an odd prime p.
  static DirichletCharacter legendre(std::uint32_t p);

  std::uint32_t modulus() const noexcept { return q_; }
  const std::vector<std::uint32_t>& exponents() const noexcept { return exponents_; }
  const std::vector<std::uint32_t>& generator_orders() const noexcept { return orders_; }
  std::uint32_t order_lcm() const noexcept { return lcm_; }

  /// chi(n) = exp(2 pi i index(n) / order_lcm()), or nullopt when gcd(n, q) > 1.
  std::optional<std::uint32_t> index(std::uint64_t n) const;
  cplx operator()(std::uint64_t n) const;

  int parity() const;
  bool is_real() const;
  bool is_primitive() const;
  cplx gauss_sum() const;
  DirichletCharacter conj() const;

 private:
  std::uint32_t q_;
  std::vector<std::uint32_t> exponents_;
  std::vector<std::uint32_t> orders_;
  std::uint32_t lcm_ = 1;
  std::vector<std::int32_t> table_;  // index per residue, -1 if not coprime
  std::vector<cplx> values_;
};

enum class LKind { Zeta, Dirichlet, Abstract };

const char* to_string(LKind k);

/// Lambda_pi(p^k) for a prime p; zero off prime powers.
using CoefficientOracle = std::function<cplx(std::uint64_t p, unsigned k)>;

struct LFunctionDescriptor {
  int degree = 1;
  std::uint64_t conductor = 1;
  std::vector<cplx> spectral;
  int pole_order = 0;
  double theta = 0.0;
  std::optional<cplx> root_number;
  bool self_dual = true;
  LKind kind = LKind::Abstract;
  std::shared_ptr<const DirichletCharacter> character;
  CoefficientOracle oracle;

  /// Throws PreconditionError if the axioms fail (conjugate-closed spectral
  /// parameters with Re mu > -1, 0 <= r <= m, 0 <= theta <= 1, |kappa| = 1).
  void validate() const;

  cplx root_number_or_throw() const;
};

LFunctionDescriptor zeta_descriptor();

/// Throws PreconditionError unless chi is primitive with q > 1.
LFunctionDescriptor dirichlet_descriptor(const DirichletCharacter& chi);

LFunctionDescriptor abstract_descriptor(int degree, std::uint64_t conductor,
                                        std::vector<cplx> spectral, int pole_order,
                                        double theta, std::optional<cplx> root_number,
                                        bool self_dual);

/// The contragredient: conjugated character, spectral parameters and root number.
LFunctionDescriptor dual(const LFunctionDescriptor& d);

/// Lambda_pi(n) with the bound |Lambda_pi(n)| <= m Lambda(n) n^theta
/// enforced (PreconditionError on violation).
cplx coefficient(const LFunctionDescriptor& d, std::uint64_t p, unsigned k);
cplx coefficient(const LFunctionDescriptor& d, std::uint64_t n, const MangoldtTable& table);

/// C(pi) = N prod(|mu_j| + 3).
double analytic_conductor(const LFunctionDescriptor& d);
/// C(t, pi) = C(pi) (|t| + 1)^m.
double analytic_conductor(const LFunctionDescriptor& d, double t);

/// log of N^{s/2} prod Gamma_R(s + mu_j). PoleError names the offending j.
cplx log_gamma_factor(const LFunctionDescriptor& d, cplx s);
cplx gamma_factor(const LFunctionDescriptor& d, cplx s);

/// (1/2) log N + sum_j Gamma_R'/Gamma_R(s + mu_j).
cplx gamma_factor_logderiv(const LFunctionDescriptor& d, cplx s);

/// Key-value text form; the character is stored as `q:k1,k2,...`.
std::string serialize(const LFunctionDescriptor& d);
LFunctionDescriptor parse_descriptor(const std::string& text);

/// FNV-1a over serialize(d), as 16 hex digits.
std::string descriptor_hash(const LFunctionDescriptor& d);

}  // namespace szeta
