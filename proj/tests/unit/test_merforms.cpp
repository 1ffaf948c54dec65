#include <doctest.h>

#include "bqf/merforms.hpp"

using namespace bqf;

namespace {
Real rel(const Complex& a, const Complex& b) { return abs(a - b) / max(Real(1), abs(b)); }
}  // namespace

TEST_CASE("fundamental domain reduction") {
  PrecisionScope s(Precision::table());
  Complex z(Real("3.3"), Real("0.01"));
  auto r = reduce_to_fd(z);
  CHECK(abs(r.z.re) <= Real("0.5"));
  CHECK(norm(r.z) >= Real("0.999999"));
  CHECK(rel(r.gamma.act(z), r.z) < Real("1e-30"));
}

TEST_CASE("algebraic and direct-sum routes agree") {
  auto pr = Precision::table();
  PrecisionScope s(pr);
  Complex z(Real("0.13"), Real("1.7"));
  FormClass P(QForm::unchecked(1, 1, 1)), Q(QForm::unchecked(1, 1, 2)), R(QForm::unchecked(2, 1, 3));
  CHECK(rel(eval_fkP(P, 4, z, pr), eval_fkP_directsum(P, 4, z, pr)) < Real("1e-12"));
  CHECK(rel(eval_fkP(Q, 4, z, pr), eval_fkP_directsum(Q, 4, z, pr)) < Real("1e-12"));
  CHECK(rel(eval_fkP(R, 3, z, pr), eval_fkP_directsum(R, 3, z, pr)) < Real("1e-9"));
  CHECK(rel(eval_fkP(Q, 6, z, pr), eval_fkP_directsum(Q, 6, z, pr)) < Real("1e-15"));
  // k = 2 converges slowly in the cutoff
  CHECK(rel(eval_fkP(Q, 2, z, pr), eval_fkP_directsum(Q, 2, z, pr)) < Real("1e-8"));
}

TEST_CASE("Bessel coefficients match the algebraic expansion") {
  auto pr = Precision::table();
  PrecisionScope s(pr);
  // weight 8 has no cusp forms, so nothing Fourier-side enters the construction
  FormClass P(QForm::unchecked(1, 1, 1)), Q(QForm::unchecked(1, 1, 2));
  for (int n = 1; n <= 2; ++n) {
    CHECK(rel(fourier_coeff_fkP(P, 4, n, pr), fourier_coeff_algebraic(P, 4, n, pr)) < Real("1e-12"));
    CHECK(rel(fourier_coeff_fkP(Q, 4, n, pr), fourier_coeff_algebraic(Q, 4, n, pr)) < Real("1e-12"));
  }
  CHECK(abs(fourier_coeff_algebraic(Q, 4, 0, pr)) < Real("1e-25"));
}

TEST_CASE("k = 1 constant terms") {
  auto pr = Precision::table();
  PrecisionScope s(pr);
  CHECK(abs(fourier_coeff_algebraic(FormClass(QForm::unchecked(1, 1, 1)), 1, 0, pr) + Real(2) / 3) < Real("1e-25"));
  CHECK(abs(fourier_coeff_algebraic(FormClass(QForm::unchecked(1, 0, 1)), 1, 0, pr) + 1) < Real("1e-25"));
  CHECK(abs(fourier_coeff_algebraic(FormClass(QForm::unchecked(1, 1, 2)), 1, 0, pr) + 2) < Real("1e-25"));
}

TEST_CASE("modularity and poles") {
  auto pr = Precision::table();
  PrecisionScope s(pr);
  auto f = f_kP(FormClass(QForm::unchecked(1, 1, 2)), 6, pr);
  Complex w(Real("0.31"), Real("0.4"));
  CHECK(modularity_residual(f, Mat2{1, 1, 1, 2}, w) / abs(f(w)) < Real("1e-25"));
  CHECK(modularity_residual(f, Mat2{0, -1, 1, 0}, w) / abs(f(w)) < Real("1e-25"));
  FormClass P(QForm::unchecked(1, 1, 1));
  CHECK_THROWS_AS(eval_fkP(P, 2, cm_point(QForm::unchecked(1, 1, 1)).to_complex(), pr), PoleProximityError);
  CHECK_THROWS_AS(eval_fkP(P, 2, cm_point(QForm::unchecked(3, 3, 1)).to_complex() + Complex(2), pr),
                  PoleProximityError);
}

TEST_CASE("twists and Hecke translates are modular") {
  auto pr = Precision::table();
  PrecisionScope s(pr);
  Complex w(Real("0.21"), Real("0.9"));
  auto t = twisted(12, -3, 2, pr);
  CHECK(modularity_residual(t, Mat2{0, -1, 1, 0}, w) / max(Real(1), abs(t(w))) < Real("1e-20"));
  auto rels = find_relations(6, 1, 2);
  REQUIRE(!rels.empty());
  auto g = hecke_translate(f_kP(FormClass(QForm::unchecked(1, 1, 1)), 6, pr), rels.front());
  CHECK(modularity_residual(g, Mat2{1, 1, 0, 1}, w) / max(Real(1), abs(g(w))) < Real("1e-20"));
  CHECK(modularity_residual(g, Mat2{0, -1, 1, 0}, w) / max(Real(1), abs(g(w))) < Real("1e-20"));
}
