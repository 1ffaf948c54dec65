#include <doctest.h>

#include "bqf/lharmonic.hpp"
#include "bqf/localpoly.hpp"

using namespace bqf;

namespace {
FormClass cls(Int a, Int b, Int c) { return FormClass(QForm::unchecked(a, b, c, 1)); }
Complex C(const char* re, const char* im) { return {Real(re), Real(im)}; }
}  // namespace

TEST_CASE("psi normalization and monotonicity") {
  PrecisionScope ps(128);
  for (int k = 2; k <= 6; ++k) {
    // B(k-1/2, 1/2)/2 = Gamma(k-1/2) sqrt(pi) / (2 (k-1)!)
    Real full = boost::multiprecision::tgamma(Real(k) - Real(0.5)) * sqrt(pi()) / 2 /
                boost::multiprecision::tgamma(Real(k));
    CHECK(abs(psi_beta(k, Real(1)) - full) < Real("1e-35"));
    Real prev = -1;
    for (int i = 0; i <= 20; ++i) {
      Real p = psi_beta(k, Real(i) / 20);
      CHECK(p > prev);
      prev = p;
    }
    // both branches meet at 1/2
    Real a = psi_beta(k, Real("0.4999999999999999999999999999999999"));
    CHECK(abs(a - psi_beta(k, Real("0.5"))) < Real("1e-30"));
  }
}

TEST_CASE("F equals its local polynomial when the cusp space is zero") {
  auto p = Precision::table();
  struct Pt { const char* re; const char* im; };
  for (auto [k, A] : {std::pair{2, cls(1, 1, -1)}, std::pair{3, cls(1, 0, -3)}, std::pair{4, cls(1, 0, -3)}}) {
    for (Pt t : {Pt{"0.1", "1.3"}, Pt{"-0.37", "0.41"}, Pt{"2.2", "0.15"}}) {
      auto r = splitting_residual(k, A, C(t.re, t.im), p);
      INFO("k=" << k << " tau=" << t.re << "+" << t.im << "i");
      CHECK(r.residual < Real("1e-10"));
    }
  }
}

TEST_CASE("average value on a semicircle") {
  auto p = Precision::table();
  PrecisionScope ps(p);
  FormClass A = cls(1, 0, -3);
  // S_[1,0,-3]: |tau| = sqrt 3
  Real y = sqrt(Real(3) - Real("0.01"));
  Real h("1e-7");
  auto on = eval_F(3, A, Complex(Real("0.1"), y), p);
  auto up = eval_F(3, A, Complex(Real("0.1"), y + h), p);
  auto dn = eval_F(3, A, Complex(Real("0.1"), y - h), p);
  CHECK(on.on_singularity);
  CHECK_FALSE(up.on_singularity);
  CHECK(abs(up.value - dn.value) > Real("1e-3"));
  CHECK(abs((up.value + dn.value) / Real(2) - on.value) < Real("1e-5"));
  auto P = local_polynomial_P(3, A, Complex(Real("0.1"), y), p);
  CHECK(P.boundary.size() == 1);
  CHECK(abs(P.value - on.value) < Real("1e-10"));
}

TEST_CASE("weight 2-2k transformation without the internal reduction") {
  auto p = Precision::table();
  FormClass A = cls(1, 1, -1);
  LharmonicOptions raw;
  raw.reduce = false;
  Complex tau = C("0.23", "1.1");
  Mat2 g{2, 1, 1, 1};
  Complex gt = g.act(tau);
  int k = 4;
  auto a = eval_F(k, A, gt, p, raw);
  auto b = eval_F(k, A, tau, p, raw);
  Complex rhs = b.value * pow(g.j(tau), 2 - 2 * k);
  CHECK(abs(a.value - rhs) < Real("1e-8"));
}

TEST_CASE("bounded at the cusp") {
  auto p = Precision::table();
  FormClass A = cls(1, 0, -3);
  PrecisionScope ps(p);
  for (int k : {2, 3}) {
    // no semicircle reaches that high, so F is the constant c_k(A) up to the truncation
    auto F = eval_F(k, A, C("0.3", "1000"), p);
    Real ck = to_real(ck_scaled(k, A)) * pow(Real(12), Real(1) / 2 - k);
    CHECK(F.err_est < Real("1e-4"));
    CHECK(abs(F.value - Complex(ck)) <= F.err_est);
  }
}

TEST_CASE("local polynomial P") {
  auto p = Precision::table();
  FormClass A = cls(1, 1, -1);
  auto P1 = local_polynomial_P(1, A, C("0.1", "5"), p);
  CHECK(P1.ck_scaled == 0);
  CHECK(abs(P1.value) == 0);
  PrecisionScope ps(p);
  auto P2 = local_polynomial_P(2, A, C("0.1", "5"), p);
  CHECK(P2.interior.empty());
  CHECK(abs(P2.value - Complex(to_real(P2.ck_scaled) * pow(Real(5), Real(-3) / 2))) < Real("1e-30"));

  // k = 2: R_{-2} P = 2i P' - 2P/v should be P_2,A / (4 D^{3/2})
  FormClass B = cls(1, 0, -3);
  Complex tau = C("0.4", "0.7");
  auto P = local_polynomial_P(2, B, tau, p);
  REQUIRE(!P.interior.empty());
  Real D(12);
  Complex dP(0);
  for (const auto& q : P.interior) {
    Complex t = Real(2 * q.a) * tau + Complex(Real(q.b));
    dP += q.a > 0 ? t : -t;
  }
  dP = dP * (Real(-1) / 4 * pow(D, Real(-3) / 2));  // (-1)^{k-1} 2^{2-2k} D^{1/2-k}
  Complex raised = Complex::i() * dP * Real(2) - P.value * (Real(2) / tau.im);
  Real Z = to_real(zeta_rational_combination(B, 2).value.value);
  Real calP = local_poly_numeric(2, B, tau, Z);
  CHECK(abs(raised - Complex(calP / (4 * pow(D, Real(3) / 2)))) < Real("1e-25"));
}

TEST_CASE("k = 6 splitting with the Eichler integrals") {
  auto p = Precision::table();
  FormClass A = cls(1, 1, -1);
  auto ex = fkA_expansion(6, A, 20, p);
  REQUIRE(ex.coords.size() == 1);
  // against a direct evaluation of the class sum
  PrecisionScope ps(p);
  Complex z = C("0.17", "1.05");
  Complex direct = eval_fkA(6, A, z);
  Complex series = eval_qseries(ex.series, z);
  CHECK(abs(direct - series) < Real("1e-12"));
  Real y = sqrt(Real(5)) / 2;
  for (Complex tau : {C("0.1", "1.3"), Complex(Real("-0.5"), y + Real("1e-3")), Complex(Real("-0.5"), y - Real("1e-3"))}) {
    auto r = splitting_residual(6, A, tau, p);
    CHECK(r.residual < Real("1e-6"));
    CHECK(abs(r.eichler_nonhol) > Real("1e-7"));
  }
}
