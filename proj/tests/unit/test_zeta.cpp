#include <doctest.h>

#include "bqf/zeta.hpp"

using namespace bqf;

namespace {
FormClass cls(Int a, Int b, Int c) { return FormClass(QForm::unchecked(a, b, c, 1)); }

// C(E_{2k}, A) = (-1)^k (k-1)!^2/(2k-1)! * Z
Real oracle_factor(int k) {
  Real f = 1;
  for (int i = 2; i <= k - 1; ++i) f *= i * i;
  for (int i = 2; i <= 2 * k - 1; ++i) f /= i;
  return k % 2 ? Real(-f) : f;
}
}  // namespace

TEST_CASE("n_A small cases") {
  FormClass A = cls(1, 1, -1);
  CHECK(n_A(1, A) == 1);
  CHECK(n_A(2, A) == 0);
  // 5 is a non-residue mod 3, so nothing at a = 3
  CHECK(n_A(3, A) == 0);
}

TEST_CASE("n_A partitions the square roots over the classes") {
  for (Int D : {5, 8, 13, 17, 21, 24}) {
    ClassIndex idx(D);
    for (Int a = 1; a <= 100; ++a) {
      Int total = 0;
      for (const auto& c : idx.classes()) total += n_A(a, c);
      CHECK(total == static_cast<Int>(sqrt_mod_4a(D, a).size()));
    }
  }
}

TEST_CASE("partial sums") {
  auto p = Precision::table();
  PrecisionScope ps(p);
  FormClass A = cls(1, 1, -1);
  auto z1 = zeta_partial(A, 3, 1, p);
  CHECK(z1.value == 1);
  auto a = zeta_partial(A, 2, 10000, p), b = zeta_partial(A, 2, 20000, p);
  CHECK(b.tail_bound < a.tail_bound);
  CHECK(abs((a.value + a.tail_estimate) - (b.value + b.tail_estimate)) < Real("1e-6"));
}

TEST_CASE("rational combination against the Eisenstein oracle") {
  for (auto [D, k, A] : {std::tuple{5, 2, cls(1, 1, -1)}, std::tuple{8, 2, cls(1, 0, -2)},
                         std::tuple{13, 3, cls(1, 1, -3)}}) {
    ZetaOptions o;
    o.cross_check = true;
    auto z = zeta_rational_combination(A, k, o);
    PrecisionScope ps(o.prec);
    INFO("D=" << D << " k=" << k << " value=" << to_string(z.value.value));
    CHECK(z.value.verified_at_two_precisions);
    REQUIRE(z.cross_check);
    CHECK(abs(z.cross_check->im) < Real("1e-20"));
    Real pred = oracle_factor(k) * z.numeric;
    CHECK(abs(z.cross_check->re - pred) < Real("1e-10") + z.err * 10);
    CHECK(abs(to_real(z.value.value) * oracle_factor(k) - z.cross_check->re) < Real("1e-10"));
  }
}

TEST_CASE("representative independence and the -A symmetry") {
  auto p = Precision::table();
  PrecisionScope ps(p);
  FormClass A = cls(1, 0, -3);
  FormClass B(QForm::unchecked(1, 0, -3).apply(Mat2{2, 1, 1, 1}));
  auto za = zeta_rational_combination(A, 2);
  auto zb = zeta_rational_combination(B, 2);
  CHECK(za.value.value == zb.value.value);
  // Z(-A) = (-1)^k Z(A)
  for (int k : {2, 3}) {
    auto zp = zeta_rational_combination(A, k);
    auto zm = zeta_rational_combination(A.negated(), k);
    CHECK(zm.value.value == (k % 2 ? -zp.value.value : zp.value.value));
  }
  Complex e = eisenstein_cycle_integral(3, QForm::unchecked(1, 0, -3), p);
  Complex em = eisenstein_cycle_integral(3, QForm::unchecked(-1, 0, 3), p);
  CHECK(abs(e + em) < Real("1e-20"));
}

TEST_CASE("level lowering at level 1 is the identity") {
  auto p = Precision::table();
  PrecisionScope ps(p);
  FormClass A = cls(1, 1, -1);
  auto x = zeta_combination_numeric(A, 2, 100000, p);
  auto y = zeta_level_lowered(A, 2, 100000, p);
  CHECK(abs(x.value - y.value) < x.err + y.err + Real("1e-20"));
}
