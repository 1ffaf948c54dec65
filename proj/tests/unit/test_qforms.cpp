#include <doctest.h>

#include "bqf/qforms.hpp"

#include <random>

using namespace bqf;

TEST_CASE("definite reduction and class numbers") {
  CHECK(reduce(QForm(3, 5, 3)) == QForm(1, 1, 3));
  CHECK(enumerate_classes(-23).size() == 3);
  CHECK(enumerate_classes(-12).size() == 2);  // [1,0,3] and [2,2,2]
  CHECK(enumerate_classes(-3).size() == 1);
  CHECK(enumerate_classes(-15).size() == 2);
  std::mt19937 rng(7);
  for (int it = 0; it < 200; ++it) {
    Mat2 g{1, 0, 0, 1};
    for (int s = 0; s < 6; ++s) {
      Int t = Int(rng() % 7) - 3;
      g = g * Mat2{1, t, 0, 1} * Mat2{0, -1, 1, 0};
    }
    QForm q = QForm(2, 1, 3).apply(g);
    auto r = reduce_with_witness(q);
    CHECK(r.form == QForm(2, 1, 3));
    CHECK(q.apply(r.witness) == r.form);
    CHECK(r.witness.det() == 1);
  }
}

TEST_CASE("indefinite reduction, cycles, pell") {
  CHECK(enumerate_classes(5).size() == 1);
  CHECK(enumerate_classes(12).size() == 2);
  auto p = pell_fundamental(5);
  CHECK(p.t == 3);
  CHECK(p.u == 1);
  QForm A(1, 1, -1);
  Mat2 M = automorph(A);
  CHECK(A.apply(M) == A);
  CHECK(M.det() == 1);
  auto rf = reduce(QForm(7, 19, 11));  // disc 361-308 = 53
  CHECK(is_reduced(rf));
  auto e = equivalent(QForm(7, 19, 11), rf);
  REQUIRE(e.witness);
  CHECK(QForm(7, 19, 11).apply(*e.witness) == rf);
  CHECK_THROWS_AS(reduce(QForm(1, 3, 2)), UnsupportedDiscriminant);
}

TEST_CASE("level N classes and equivalence") {
  auto cl = enumerate_classes(-7, 2);
  CHECK(cl.size() == 2);
  for (auto& c : cl) CHECK(c.representative.a % 2 == 0);
  auto e = equivalent(QForm(2, 1, 1, 2), QForm(2, 5, 4, 2), 2);
  CHECK(e.status == Equivalence::equivalent);
  if (e.witness) {
    CHECK(e.witness->c % 2 == 0);
    CHECK(QForm(2, 1, 1, 2).apply(*e.witness) == QForm(2, 5, 4, 2));
  }
  CHECK(equivalent(QForm(2, 1, 1, 2), QForm(2, -1, 1, 2), 2).status == Equivalence::inequivalent);
}

TEST_CASE("stabilizers and characters") {
  CHECK(stabilizer_order(QForm(1, 1, 1)) == 3);
  CHECK(stabilizer_order(QForm(1, 0, 1)) == 2);
  CHECK(stabilizer_order(QForm(2, 2, 2)) == 3);
  CHECK(stabilizer_order(QForm(1, 1, 2)) == 1);
  CHECK(kronecker(-4, 3) == -1);
  CHECK(kronecker(5, 2) == -1);
  CHECK(kronecker(-3, -1) == -1);
  CHECK(kronecker(8, 7) == 1);
  CHECK(is_fundamental(-4));
  CHECK(is_fundamental(12));
  CHECK(!is_fundamental(-12));
  CHECK(genus_character(-3, QForm(1, 1, 4)) == 1);
  CHECK(genus_character(-3, QForm(2, 1, 2)) == -1);
  CHECK(genus_character(-3, QForm(3, 3, 2)) == -1);
  CHECK(genus_character(-3, QForm(3, 3, 3)) == 0);
  CHECK(genus_character(-3, QForm(2, 2, 2)) == -1);
}

TEST_CASE("cm points") {
  PrecisionScope s(Precision::standard());
  auto t = cm_point(QForm(1, 1, 1));
  CHECK(t.u == Rational(-1, 2));
  CHECK(abs(t.to_complex() - Complex(Real(-1) / 2, sqrt(Real(3)) / 2)) < Real("1e-70"));
  QForm Q(1, 0, -2);
  auto tau = cm_point(QForm(1, 0, 1));
  CHECK(q_tau_scaled(Q, tau) == Rational(-2));
  CHECK(in_interior(Q, tau));
}
