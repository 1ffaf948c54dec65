#include <doctest.h>

#include "bqf/halfint.hpp"
#include "bqf/merforms.hpp"

#include <random>

using namespace bqf;

TEST_CASE("Kloosterman and Salie sums") {
  PrecisionScope s(Precision::table());
  for (Int a = 1; a <= 30; ++a) {
    Complex K = kloosterman_plus(5, -12, a);
    CHECK(abs(K) <= Real(a) * 2);
  }
  // no b with b^2 = 5 mod 8
  CHECK(abs(salie_sum(2, 5, 1, 3)) == 0);
  std::mt19937 rng(3);
  const std::vector<Int> Ds{-3, -4, -7, -8, -15, -20, 5, 8, 12, 13, 17, 21};
  const std::vector<Int> fund{1, -3, -4, 5, -7, 8, -8, 12, 13};
  for (Int a = 1; a <= 20; ++a)
    for (int t = 0; t < 5; ++t) {
      Int D = Ds[rng() % Ds.size()], d = fund[rng() % fund.size()], n = Int(rng() % 21) - 10;
      Int p = D * d;
      Int r = static_cast<Int>(std::llround(std::sqrt(double(std::llabs(p)))));
      if (p > 0 && r * r == p) continue;
      CHECK(abs(salie_sum(a, D, d, n) - salie_via_kloosterman(a, D, d, n)) < Real("1e-25"));
    }
}

TEST_CASE("Poincare coefficients") {
  auto pr = Precision::table();
  PrecisionScope s(pr);
  // weight 1/2: coefficients of Zagier's f_3 (theta has no q^5 term)
  CHECK(abs(poincare_coeff_plus(1, -3, 5, 1, pr, 1000).value + 85995) < Real("0.5"));
  CHECK_THROWS(poincare_coeff_plus(2, -2, 3, 1, pr));
  // Poincare route against the algebraic class-sum coefficient
  Complex a = twisted_coeff_via_poincare(6, 1, -3, 1, 1, pr);
  Complex b = fourier_coeff_algebraic(FormClass(QForm::unchecked(1, 1, 1)), 6, 1, pr);
  CHECK(abs(a - b) / abs(b) < Real("1e-10"));
  // k = 1: equal truncation makes the two routes agree termwise (divisor-sum term included)
  Complex c = twisted_coeff_via_poincare(1, -7, 1, 1, 1, pr, 300);
  Complex d = twisted_coeff_via_classes(1, -7, 1, 1, pr, 300);
  CHECK(abs(c - d) < Real("1e-15"));
}

TEST_CASE("rational coefficients") {
  auto pr = Precision::table();
  PrecisionScope s(pr);
  auto r = ratcoef_check(9, 1, {{-4, 1}, {-3, 2}}, 2, pr);
  CHECK(r.all_rational());
  REQUIRE(r.entries.front().rational);
  CHECK(*r.entries.front().rational == Rational(-704, 105));  // same as the algebraic coefficients
  CHECK(!ratcoef_check(9, 1, {{-4, 1}}, 1, pr).all_rational());
  CHECK(ratcoef_check(9, 1, {}, 2, pr).all_rational());
  // the cusp form q^3 - 2q^4 + ... pairs to zero with the principal part q^{-4} + 2q^{-3}
  CHECK(1 * (-2) + 2 * 1 == 0);
}
