#include <doctest.h>

#include "bqf/modforms.hpp"

using namespace bqf;

TEST_CASE("delta and eisenstein coefficients") {
  auto d = delta_coeffs(20);
  CHECK(d[1] == 1);
  CHECK(d[2] == -24);
  CHECK(d[3] == 252);
  CHECK(d[10] == -115920);
  auto e4 = eisenstein_2k_level1(2, 10);
  auto e6 = eisenstein_2k_level1(3, 10);
  CHECK(e4[0] == 1);
  CHECK(e4[1] == 240);
  CHECK(e6[1] == -504);
  // E4^3 - E6^2 = 1728 Delta
  auto lhs = qpow(e4, 3) - e6 * e6;
  CHECK(lhs == delta_coeffs(10) * Rational(1728));
  CHECK(bernoulli(12) == Rational(-691, 2730));
}

TEST_CASE("E2 star at level N") {
  auto e = e2_star_level(1, 10);
  CHECK(e.holomorphic[1] == -24);
  CHECK(e.holomorphic[6] == -24 * 12);
  CHECK(e.nonhol_coeff == 3);
  auto e3 = e2_star_level(3, 10);
  CHECK(e3.holomorphic[0] == 1);
  CHECK(e3.nonhol_coeff == Rational(3, 4));
  // n=1: sigma(1/3) = 0, d=3 term: -1/9 sigma(1)
  CHECK(e3.holomorphic[1] == Rational(-24) * Rational(9, 8) * Rational(-1, 9));
}

TEST_CASE("cusp bases and relations") {
  for (int k = 1; k <= 5; ++k) CHECK(cusp_basis(k, 1, 10).empty());
  CHECK(cusp_basis(7, 1, 10).empty());
  CHECK(cusp_basis(6, 1, 10).size() == 1);
  auto b9 = cusp_basis(9, 1, 10);
  REQUIRE(b9.size() == 1);
  CHECK(b9[0] == delta_coeffs(10) * eisenstein_2k_level1(3, 10));
  for (int w = 4; w <= 40; w += 2) CHECK(static_cast<int>(monomial_basis(w, 4, false).size()) == modular_dim(w));
  auto r = find_relations(6, 1, 2);
  REQUIRE(r.size() == 1);
  CHECK(r[0].str() == "24,1");
  auto r5 = find_relations(5, 1, 3);
  REQUIRE(!r5.empty());
  CHECK(r5[0].str() == "1");
  for (const auto& rv : find_relations(12, 1, 5)) CHECK(is_relation(rv));
  CHECK(find_relations(12, 1, 2).empty());
}

TEST_CASE("hecke operators") {
  CHECK(hecke_coset_reps(1).size() == 1);
  auto r2 = hecke_coset_reps(2);
  CHECK(r2.size() == 3);
  CHECK(hecke_coset_reps(6).size() == 12);
  auto d = delta_coeffs(60);
  auto t2 = hecke_on_qseries(d, 2);
  CHECK(t2 == d.truncated(30) * Rational(-24));
  CHECK(hecke_on_qseries(d, 1) == d);
  auto f = delta_coeffs(60) * eisenstein_2k_level1(2, 60) * eisenstein_2k_level1(3, 60);
  CHECK(hecke_on_qseries(hecke_on_qseries(f, 2), 3) == hecke_on_qseries(hecke_on_qseries(f, 3), 2));
  // relation kills the Hecke image as well
  auto rv = find_relations(6, 1, 2)[0];
  QSeries s = hecke_on_qseries(d, 1) * Rational(24) + hecke_on_qseries(d, 2).truncated(30) * Rational(1);
  s.c.resize(2);
  CHECK(s.c[1] == 0);
}

TEST_CASE("eichler integrals") {
  PrecisionScope ps(Precision::table());
  auto d = delta_coeffs(80);
  Complex tau(Real("0.1"), Real(1));
  Complex a = eichler_nonholomorphic(d, tau, Precision::table());
  Complex b = eichler_nonholomorphic_quadrature(d, tau, Precision::table());
  CHECK(abs(a - b) < Real("1e-25"));
  Complex c = eichler_nonholomorphic(d, Complex(Real("-0.1"), Real(1)), Precision::table());
  CHECK(abs(c - conj(a)) < Real("1e-30"));
  CHECK(abs(eichler_holomorphic(QSeries::zero(12, 10), tau, Precision::table())) == 0);
}
