#include <doctest.h>

#include "bqf/localpoly.hpp"

#include <algorithm>
#include <random>

using namespace bqf;

namespace {
QuadraticPoint qp(Int d, Rational u, Rational v) {
  QuadraticPoint t;
  t.d = d;
  t.u = u;
  t.v = v;
  return t;
}

// every form of disc D with |a|,|b| <= B, tau inside or on S_Q, in the class
std::pair<std::size_t, std::size_t> brute(const FormClass& A, const QuadraticPoint& t, Int B) {
  std::size_t in = 0, on = 0;
  for (Int a = -B; a <= B; ++a)
    for (Int b = -B; b <= B; ++b) {
      if (a == 0 || (b * b - A.disc()) % (4 * a)) continue;
      QForm q = QForm::unchecked(a, b, (b * b - A.disc()) / (4 * a));
      Rational n = q_tau_numerator(q, t);
      if (n.sign() * (a > 0 ? 1 : -1) > 0 || !A.contains(q)) continue;
      (n == 0 ? on : in)++;
    }
  return {in, on};
}
}  // namespace

TEST_CASE("Legendre coefficients") {
  auto p3 = legendre_coeffs(3);
  CHECK(p3[1] == Rational(-3, 2));
  CHECK(p3[3] == Rational(5, 2));
  CHECK(legendre_coeffs(0)[0] == 1);
}

TEST_CASE("interior form enumeration") {
  FormClass A(QForm::unchecked(1, 1, -1));
  CHECK(interior_forms(A, qp(-3, 0, 1)).forms.empty());  // Im tau = sqrt3 > sqrt5/2
  auto t = cm_point(QForm::unchecked(1, 1, 1));
  auto s = interior_forms(A, t);
  auto bf = brute(A, t, 50);
  CHECK(s.forms.size() == bf.first);
  CHECK(s.boundary_forms.size() == bf.second);
  // tau = i sqrt3 is the top of S_[1,0,-3]
  auto b = interior_forms(FormClass(QForm::unchecked(1, 0, -3)), qp(-3, 0, 1));
  CHECK(std::count(b.boundary_forms.begin(), b.boundary_forms.end(), QForm::unchecked(1, 0, -3)) == 1);

  std::mt19937 rng(7);
  const std::vector<Int> Ds{5, 8, 12, 13, 17, 21, 24};
  const std::vector<Int> ds{-3, -4, -7, -8, -11, -15, -19, -20, -23, -24};
  for (int it = 0; it < 12; ++it) {
    Int D = Ds[rng() % Ds.size()], d = ds[rng() % ds.size()];
    auto cls = enumerate_classes(D);
    auto Ad = cls[rng() % cls.size()];
    auto Ps = enumerate_classes(d);
    auto tp = cm_point(Ps[rng() % Ps.size()].representative);
    tp.v /= Int(1 + rng() % 3);
    tp.u += Rational(Int(rng() % 5), 7);
    auto e = interior_forms(Ad, tp);
    auto br = brute(Ad, tp, 100);
    CHECK(e.forms.size() == br.first);
    CHECK(e.boundary_forms.size() == br.second);
  }
}

TEST_CASE("local polynomial: exact vs floating") {
  PrecisionScope s(Precision::table());
  FormClass A(QForm::unchecked(1, 1, -1));
  Rational Z(37, 5);  // any value works for the comparison
  for (int k : {1, 2, 3, 6}) {
    auto t = cm_point(QForm::unchecked(2, 1, 3));
    t.v /= 3;
    auto ex = local_poly_with_zeta(k, A, t, Z);
    Real num = local_poly_numeric(k, A, t.to_complex(), to_real(Z)) * pow(sqrt(Real(23)), k - 1);
    CHECK(abs(to_real(ex.value) - num) < Real("1e-20") * max(Real(1), abs(num)));
  }
  CHECK(local_poly_with_zeta(1, A, qp(-3, 0, 5), Z).value == 0);
  // average rule on the boundary of S_[1,0,-3] at i sqrt3 ([1,0,-3] is not equivalent to its negative)
  FormClass B(QForm::unchecked(1, 0, -3));
  for (int k : {3, 5}) {
    auto ex = local_poly_with_zeta(k, B, qp(-3, 0, 1), Z);
    Complex t0(Real(0), sqrt(Real(3)));
    Real eps("1e-12");
    Real up = local_poly_numeric(k, B, t0 + Complex(Real(0), eps), to_real(Z));
    Real dn = local_poly_numeric(k, B, t0 - Complex(Real(0), eps), to_real(Z));
    Real avg = (up + dn) / 2 * pow(sqrt(Real(3)), k - 1);
    CHECK(abs(to_real(ex.value) - avg) < Real("1e-10") * max(Real(1), abs(avg)));
    CHECK(abs(up - dn) > Real("1e-3"));
  }
}

TEST_CASE("theorem right-hand sides") {
  FormClass P(QForm::unchecked(1, 1, 1));
  CHECK(theorem1_rhs(2, P, {{1, FormClass(QForm::unchecked(1, 1, -1))}}).value == 4);
  CHECK_THROWS_AS(theorem1_rhs(6, P, {{1, FormClass(QForm::unchecked(1, 1, -1))}}), RelationCertificateError);
  CHECK(verify_cusp_relation(6, {{2, FormClass(QForm::unchecked(1, 1, -1))}, {1, FormClass(QForm::unchecked(1, 0, -2))}},
                             Precision::make(128, -25)));
}
