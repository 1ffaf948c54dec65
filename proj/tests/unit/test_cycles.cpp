#include <doctest.h>

#include "bqf/cycles.hpp"

using namespace bqf;

TEST_CASE("geodesic segments") {
  PrecisionScope s(Precision::table());
  auto g = geodesic_segment(QForm::unchecked(1, 1, -1));
  CHECK(abs(g.center + Real("0.5")) < Real("1e-30"));
  CHECK(abs(g.radius - sqrt(Real(5)) / 2) < Real("1e-30"));
  CHECK(abs(norm(g.z1 - Complex(g.center)) - g.radius * g.radius) < Real("1e-25"));
  CHECK_THROWS(geodesic_segment(QForm::unchecked(1, 0, -1)));
  CHECK(on_geodesic(QForm::unchecked(1, 0, -1), QForm::unchecked(1, 0, 1)));
  CHECK(!on_geodesic(QForm::unchecked(1, 1, -1), QForm::unchecked(1, 1, 1)));
  CHECK(poles_on_geodesic(QForm::unchecked(1, 1, -1), FormClass(QForm::unchecked(1, 1, 1))).empty());
  auto p1 = poles_on_geodesic(QForm::unchecked(1, 0, -2), FormClass(QForm::unchecked(1, 0, 1)));
  auto p2 = poles_on_geodesic(QForm::unchecked(1, 0, -2), FormClass(QForm::unchecked(2, 2, 1)));
  CHECK(p1.size() == 2);
  CHECK(p1.size() == p2.size());
}

TEST_CASE("cycle integrals of f_{k,-3}") {
  auto pr = Precision::make(128, -25);
  PrecisionScope s(pr);
  CHECK(abs(cycle_integral(ModularFunction::zero(4), QForm::unchecked(1, 1, -1), pr).value) == 0);
  auto f2 = f_kD(-3, 2, pr);
  auto r = cycle_integral(f2, QForm::unchecked(1, 1, -1), pr);
  CHECK(abs(r.value - Complex(4)) < Real("1e-20"));
  CHECK(!r.pv_used);
  auto q = cycle_integral_rational(f2, QForm::unchecked(1, 0, -6), BigInt(1000), pr);
  REQUIRE(q);
  CHECK(q->value == 16);
  // equivalent representative of the same class
  CHECK(abs(cycle_integral(f2, QForm::unchecked(1, 1, -1).apply(Mat2{2, 1, 1, 1}), pr).value - Complex(4)) <
        Real("1e-18"));
  auto f6 = f_kD(-3, 6, pr);
  auto c6 = cycle_integral(f6, QForm::unchecked(1, 1, -1), pr).value;
  CHECK(abs(c6.re - Real("142.36448")) < Real("5e-5"));
  CHECK(!cycle_integral_rational(f6, QForm::unchecked(1, 1, -1), BigInt(10000), pr));
  auto c6b = cycle_integral(f6, QForm::unchecked(1, 0, -2), pr).value;
  CHECK(abs(c6 * Real(2) + c6b - Complex(696)) < Real("1e-15"));
}

TEST_CASE("principal values") {
  auto pr = Precision::make(128, -25);
  PrecisionScope s(pr);
  auto f = f_kD(-4, 2, pr);
  auto r = cycle_integral(f, QForm::unchecked(1, 1, -1), pr);
  CHECK(r.pv_used);
  CHECK(r.poles_on_cycle.size() == 2);
  CHECK(abs(r.value - Complex(8)) < Real("1e-20"));
  CycleOptions o;
  o.base_shift = 0.37;
  CHECK(abs(cycle_integral(f, QForm::unchecked(1, 1, -1), pr, o).value - r.value) < Real("1e-20"));

  // synthetic simple pole on the cycle
  QForm A = QForm::unchecked(1, 0, -2);
  FormClass P(QForm::unchecked(1, 0, 1));
  auto qs = poles_on_geodesic(A, P);
  REQUIRE(!qs.empty());
  Complex tq = cm_point(qs.front()).to_complex();
  ModularFunction g;
  g.weight = 2;
  g.tag = "synthetic";
  g.evaluator = [tq](const Complex& z) { return Complex(1) / (z - tq); };
  g.poles.push_back(PoleSpec{P, 1, {Mat2::identity()}});
  CycleOptions a, b;
  b.eps_rel = 0.5e-3;
  auto v1 = cycle_integral(g, A, pr, a), v2 = cycle_integral(g, A, pr, b);
  CHECK(v1.pv_used);
  CHECK(abs(v1.value - v2.value) < Real("1e-20"));
}
