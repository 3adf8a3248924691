#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "szeta/critical_line.hpp"
#include "szeta/error.hpp"

using namespace szeta;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const ZeroSet& zeta_zeros_100() {
  static const ZeroSet zs = find_zeros(zeta_descriptor(), 100.0);
  return zs;
}

}  // namespace

TEST_CASE("zeta and L-values at frozen reference points") {
  // 30-digit reference evaluations, frozen.
  CHECK(std::abs(zeta(cplx(0.5, 14.0)) - cplx(0.022241142609993589, -0.103258123266450058)) < 1e-12);
  CHECK(std::abs(zeta(cplx(0.5, 100.5)) - cplx(1.737774021206534791, -1.463757770305698721)) < 1e-11);
  CHECK(std::abs(zeta(cplx(2.0, 1.0)) - cplx(1.150355703254902672, -0.437530865919607881)) < 1e-13);
  CHECK(zeta(cplx(2.0, 0.0)).real() == doctest::Approx(kPi * kPi / 6).epsilon(1e-14));
  CHECK_THROWS_AS(zeta(cplx(1.0, 0.0)), PoleError);

  const auto c3 = dirichlet_descriptor(DirichletCharacter(3, {1}));
  CHECK(l_value(c3, 0.5).real() == doctest::Approx(0.480867557696828626).epsilon(1e-12));
  CHECK(std::abs(l_value(c3, cplx(0.5, 10.0)) - cplx(1.259970690437129411, -0.088079634510148062)) < 1e-11);
  const auto c5 = dirichlet_descriptor(DirichletCharacter(5, {1}));
  CHECK(std::abs(l_value(c5, cplx(0.5, 3.0)) - cplx(1.955680284436587075, 0.140812073443243364)) < 1e-12);
  const auto c4 = dirichlet_descriptor(DirichletCharacter(4, {1}));
  CHECK(l_value(c4, 1.0).real() == doctest::Approx(kPi / 4).epsilon(1e-13));
}

TEST_CASE("Hardy Z is real and changes sign at the first zero") {
  const auto z = zeta_descriptor();
  CHECK(hardy_z(z, 14.0) * hardy_z(z, 14.2) < 0.0);
  const auto c5 = dirichlet_descriptor(DirichletCharacter(5, {1}));
  for (double t : {-20.0, -3.0, 0.0, 7.5, 33.0}) CHECK_NOTHROW(hardy_z(c5, t));
}

TEST_CASE("zeta zeros to 100: count, first ordinate, published table") {
  const auto& zs = zeta_zeros_100();
  CHECK(zs.ordinates.size() == 29);
  CHECK_FALSE(zs.completeness_uncertain);
  CHECK(std::abs(zs.ordinates.front() - 14.134725) < 1e-6);
  const auto table = ingest_zeros(std::string(SZETA_TEST_DATA) + "/zeta_zeros_100.txt", zeta_descriptor());
  REQUIRE(table.ordinates.size() == 29);
  CHECK(table.provenance == Provenance::Ingested);
  CHECK(table.precision == doctest::Approx(5e-10));
  for (std::size_t i = 0; i < 29; ++i) CHECK(std::abs(table.ordinates[i] - zs.ordinates[i]) < 1e-8);
}

TEST_CASE("counting identity N(t) = theta/pi + 1 + S(t)") {
  const auto& zs = zeta_zeros_100();
  const auto z = zeta_descriptor();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> dist(0.5, 100.0);
  for (int i = 0; i < 25; ++i) {
    const double t = dist(rng);
    const double rhs = riemann_siegel_theta(t) / kPi + 1.0 + argument_s(z, t).value;
    CHECK(std::abs(count_positive(zs, t) - rhs) < 1e-6);
    CHECK(std::abs(count_zeros(zs, t) - counting_formula(z, t)) < 1e-6);
  }
}

TEST_CASE("S at a zero ordinate takes the symmetric limit") {
  const auto& zs = zeta_zeros_100();
  const auto z = zeta_descriptor();
  const double g = zs.ordinates[0];
  const auto at = argument_s(z, g);
  CHECK(at.at_zero);
  const double below = argument_s(z, g - 1e-4).value, above = argument_s(z, g + 1e-4).value;
  CHECK(above - below == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(at.value == doctest::Approx(0.5 * (above + below)).epsilon(1e-3));
  CHECK(count_positive(zs, g) == doctest::Approx(0.5));
}

TEST_CASE("Dirichlet: S of the dual character is -S(-t)") {
  const auto c5 = dirichlet_descriptor(DirichletCharacter(5, {1}));
  const auto d5 = dual(c5);
  for (double t : {1.3, 7.7, 21.0}) {
    CHECK(argument_s(d5, t).value == doctest::Approx(-argument_s(c5, -t).value).epsilon(1e-9));
  }
}

TEST_CASE("argument-principle rectangle agrees with the zero finder") {
  const auto z = zeta_descriptor();
  CHECK(contour_count(z, 1.0, 50.0) == doctest::Approx(10.0).epsilon(1e-6));
  const auto c5 = dirichlet_descriptor(DirichletCharacter(5, {1}));
  const auto zs = find_zeros(c5, 30.0);
  CHECK(zs.full_line);
  CHECK(contour_count(c5, -29.5, 29.5) == doctest::Approx(count_zeros(zs, 29.5)).epsilon(1e-6));
}

TEST_CASE("ingestion errors") {
  const auto z = zeta_descriptor();
  CHECK_THROWS_AS(ingest_zeros_text("14.134725142\n21.0220396\n20.0\n", z), ParseError);
  CHECK_THROWS_AS(ingest_zeros_text("14.134725142\nabc\n", z), ParseError);
  CHECK_THROWS_AS(ingest_zeros_text("14.2\n21.022039639\n", z), MismatchError);
  auto text = read_file(std::string(SZETA_TEST_DATA) + "/zeta_zeros_100.txt");
  text.replace(text.find("25.010857580"), 12, "25.011857580");
  CHECK_THROWS_AS(ingest_zeros_text(text, z), MismatchError);
}

TEST_CASE("zero cache round trip and invalidation") {
  const auto dir = std::filesystem::temp_directory_path() / "szeta-test-cache";
  std::filesystem::remove_all(dir);
  const auto z = zeta_descriptor();
  const auto zs = load_or_find_zeros(z, 60.0, dir);
  const auto path = zero_cache_path(dir, z);
  REQUIRE(std::filesystem::exists(path));
  const auto back = read_zero_cache(path, z);
  REQUIRE(back);
  CHECK(back->ordinates == zs.ordinates);
  CHECK(back->complete_to == zs.complete_to);
  CHECK_FALSE(read_zero_cache(path, dirichlet_descriptor(DirichletCharacter(3, {1}))));
  CHECK_THROWS_AS(count_zeros(zs, 61.0), CompletenessError);
  std::filesystem::remove_all(dir);
}
