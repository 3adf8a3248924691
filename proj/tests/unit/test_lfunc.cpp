#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "szeta/error.hpp"
#include "szeta/lfunc.hpp"

using namespace szeta;

namespace {

int euler_criterion(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, b = a % p, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 0 ? 0 : (r == 1 ? 1 : -1);
}

}  // namespace

TEST_CASE("Legendre symbol matches Euler's criterion") {
  for (std::uint32_t p : {3u, 5u, 7u, 101u, 997u}) {
    const auto chi = DirichletCharacter::legendre(p);
    CHECK(chi.is_real());
    CHECK(chi.is_primitive());
    CHECK(chi.parity() == (p % 4 == 1 ? 0 : 1));
    for (std::uint64_t n = 0; n < 3 * p; ++n) {
      REQUIRE(std::abs(chi(n) - cplx(euler_criterion(n, p), 0.0)) < 1e-14);
    }
  }
}

TEST_CASE("characters are multiplicative, periodic and orthogonal") {
  std::mt19937_64 rng(1);
  for (auto [q, ks] : std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>>{
           {5, {1}}, {8, {1, 1}}, {9, {1}}, {63, {2, 1}}, {40, {1, 1, 2}}}) {
    const DirichletCharacter chi(q, ks);
    cplx total = 0.0;
    for (std::uint64_t n = 0; n < q; ++n) total += chi(n);
    CHECK(std::abs(total) < 1e-12);
    std::uniform_int_distribution<std::uint64_t> dist(1, 10000);
    for (int i = 0; i < 200; ++i) {
      const auto a = dist(rng), b = dist(rng);
      REQUIRE(std::abs(chi(a * b) - chi(a) * chi(b)) < 1e-12);
      REQUIRE(std::abs(chi(a + q) - chi(a)) < 1e-12);
      REQUIRE((std::gcd<std::uint64_t>(a, q) == 1) == (std::abs(chi(a)) > 0.5));
    }
  }
}

TEST_CASE("primitivity, Gauss sums and conjugation") {
  CHECK(DirichletCharacter(9, {1}).is_primitive());
  CHECK_FALSE(DirichletCharacter(9, {3}).is_primitive());  // order 2, induced from mod 3
  for (auto chi : {DirichletCharacter(5, {1}), DirichletCharacter(7, {2}), DirichletCharacter(12, {1, 1})}) {
    if (!chi.is_primitive()) continue;
    CHECK(std::norm(chi.gauss_sum()) == doctest::Approx(static_cast<double>(chi.modulus())).epsilon(1e-12));
    const auto c = chi.conj();
    for (std::uint64_t n = 1; n < 50; ++n) REQUIRE(std::abs(c(n) - std::conj(chi(n))) < 1e-14);
  }
  CHECK_THROWS_AS(dirichlet_descriptor(DirichletCharacter(9, {3})), PreconditionError);
}

TEST_CASE("descriptor facts for zeta and Dirichlet L-functions") {
  const auto z = zeta_descriptor();
  CHECK(z.degree == 1);
  CHECK(z.conductor == 1);
  CHECK(z.pole_order == 1);
  CHECK(z.self_dual);
  CHECK(analytic_conductor(z) == doctest::Approx(3.0));
  CHECK(analytic_conductor(z, 9.0) == doctest::Approx(30.0));

  const auto d = dirichlet_descriptor(DirichletCharacter(5, {1}));
  CHECK(d.pole_order == 0);
  CHECK_FALSE(d.self_dual);
  CHECK(std::abs(std::abs(d.root_number_or_throw()) - 1.0) < 1e-12);
  CHECK(d.spectral[0] == cplx(1.0, 0.0));  // odd character
  const auto e = dual(d);
  CHECK(std::abs(e.root_number_or_throw() - std::conj(d.root_number_or_throw())) < 1e-12);
  CHECK(std::abs(coefficient(e, 2, 1) - std::conj(coefficient(d, 2, 1))) < 1e-15);

  const auto c3 = dirichlet_descriptor(DirichletCharacter(3, {1}));
  CHECK(c3.self_dual);
  CHECK(std::abs(c3.root_number_or_throw() - cplx(1.0, 0.0)) < 1e-12);
}

TEST_CASE("validation and the coefficient bound") {
  CHECK_THROWS_AS(abstract_descriptor(1, 1, {0.0}, 0, 1.5, std::nullopt, true), PreconditionError);
  CHECK_THROWS_AS(abstract_descriptor(1, 1, {-1.0}, 0, 0.0, std::nullopt, true), PreconditionError);
  CHECK_THROWS_AS(abstract_descriptor(2, 1, {cplx(0, 1), cplx(0, 2)}, 0, 0.0, std::nullopt, true),
                  PreconditionError);
  CHECK_THROWS_AS(abstract_descriptor(1, 1, {0.0}, 0, 0.0, cplx(2.0, 0.0), true), PreconditionError);
  auto a = abstract_descriptor(1, 7, {0.0}, 0, 0.0, std::nullopt, true);
  CHECK_THROWS_AS(a.root_number_or_throw(), PreconditionError);
  CHECK_THROWS_AS(coefficient(a, 2, 1), PreconditionError);
  a.oracle = [](std::uint64_t p, unsigned) { return cplx(1.5 * std::log(static_cast<double>(p)), 0.0); };
  CHECK_THROWS_AS(coefficient(a, 3, 1), PreconditionError);
  a.theta = 0.5;
  CHECK_NOTHROW(coefficient(a, 3, 1));
}

TEST_CASE("gamma factor: poles and log-derivative") {
  const auto z = zeta_descriptor();
  CHECK_THROWS_AS(log_gamma_factor(z, cplx(-2.0, 0.0)), PoleError);
  CHECK_THROWS_AS(log_gamma_factor(z, cplx(0.0, 0.0)), PoleError);
  CHECK_THROWS_AS(log_gamma_factor(z, cplx(-1.0, 0.0)), PreconditionError);  // branch cut
  CHECK_NOTHROW(log_gamma_factor(z, cplx(-1.0, 1e-3)));
  const auto d = dirichlet_descriptor(DirichletCharacter(7, {1}));
  for (const auto& desc : {z, d}) {
    for (double t : {0.0, 3.0, 40.0, -120.0}) {
      const cplx s(0.5, t);
      const double h = 1e-5;
      const cplx numeric = (log_gamma_factor(desc, s + h) - log_gamma_factor(desc, s - h)) / (2 * h);
      CHECK(std::abs(gamma_factor_logderiv(desc, s) - numeric) < 1e-8);
    }
  }
}

TEST_CASE("serialization round trip and hashing") {
  for (const auto& d : {zeta_descriptor(), dirichlet_descriptor(DirichletCharacter(5, {1})),
                        dirichlet_descriptor(DirichletCharacter::legendre(101))}) {
    const auto back = parse_descriptor(serialize(d));
    CHECK(serialize(back) == serialize(d));
    CHECK(descriptor_hash(back) == descriptor_hash(d));
    CHECK(descriptor_hash(d).size() == 16);
  }
  CHECK(descriptor_hash(zeta_descriptor()) != descriptor_hash(dirichlet_descriptor(DirichletCharacter(3, {1}))));
  try {
    parse_descriptor("# comment\ndegree = 1\nconductor 5\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}
