#pragma once

#include "bqf/numerics.hpp"
#include "bqf/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bqf {

using Int = std::int64_t;

struct Mat2 {
  Int a = 1, b = 0, c = 0, d = 1;

  static Mat2 identity() { return {}; }
  Int det() const { return a * d - b * c; }
  Mat2 operator*(const Mat2& o) const;
  bool operator==(const Mat2& o) const = default;
  Mat2 inverse() const;  // det must be +-1
  Mat2 adjugate() const { return {d, -b, -c, a}; }
  Mat2 neg() const { return {-a, -b, -c, -d}; }
  Complex act(const Complex& z) const;   // Mobius action
  Complex j(const Complex& z) const;     // c z + d
  std::string str() const;
};

Mat2 mat_pow(const Mat2& m, long n);

class UnsupportedDiscriminant : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct QForm {
  Int a = 0, b = 0, c = 0;
  Int level = 1;

  QForm() = default;
  QForm(Int a_, Int b_, Int c_, Int N = 1);  // validates

  static QForm unchecked(Int a_, Int b_, Int c_, Int N = 1);
  static QForm parse(const std::string& s, Int N = 1);

  Int disc() const { return b * b - 4 * a * c; }
  bool definite() const { return disc() < 0; }
  Int content() const;
  // (Q o g)(x,y) = Q(g (x,y)^T)
  QForm apply(const Mat2& g) const;
  QForm neg() const { return unchecked(-a, -b, -c, level); }
  Int eval(Int x, Int y) const { return a * x * x + b * x * y + c * y * y; }
  Complex eval(const Complex& z) const;  // Q(z, 1)
  bool same_coeffs(const QForm& o) const { return a == o.a && b == o.b && c == o.c; }
  bool operator==(const QForm& o) const { return same_coeffs(o); }
  bool operator<(const QForm& o) const;
  std::string str() const;
};

Int discriminant(const QForm& q);
bool is_square(Int n);
Int isqrt(Int n);
Int gcd3(Int a, Int b, Int c);

struct Reduction {
  QForm form;
  Mat2 witness;  // form = original.apply(witness)
};

bool is_reduced(const QForm& q);
Reduction reduce_with_witness(const QForm& q);
QForm reduce(const QForm& q);

// rho step for indefinite forms, returns the matrix used
Mat2 rho_matrix(const QForm& q);
// the reduced cycle of an indefinite reduced form (starting at it)
std::vector<QForm> reduced_cycle(const QForm& reduced);

enum class Equivalence { equivalent, inequivalent, indeterminate };

struct EquivalenceResult {
  Equivalence status = Equivalence::inequivalent;
  std::optional<Mat2> witness;  // Q2 = Q1.apply(witness)
  explicit operator bool() const { return status == Equivalence::equivalent; }
};

EquivalenceResult equivalent(const QForm& q1, const QForm& q2, Int N = 1);

struct FormClass {
  QForm representative;
  Int level = 1;
  QForm reduced;  // level-1 reduced form (canonical key)

  explicit FormClass(const QForm& rep);
  FormClass(const QForm& rep, Int N);
  bool contains(const QForm& q) const;
  Int disc() const { return representative.disc(); }
  FormClass negated() const;
  std::vector<QForm> members(Int coeff_bound) const;
};

std::vector<FormClass> enumerate_classes(Int D, Int N = 1);
std::vector<QForm> reduced_definite_forms(Int D);  // all reduced forms, incl. non-primitive

struct PellSolution {
  BigInt t, u;
};
PellSolution pell_fundamental(Int D);
Mat2 automorph(const QForm& A, Int N = 1);

struct QuadraticPoint {
  Int d = -4;         // base discriminant
  Rational u, v;      // tau = u + v i sqrt|d|

  Complex to_complex() const;
  Real imag() const;
  std::string str() const;
};

QuadraticPoint cm_point(const QForm& P);
int stabilizer_order(const QForm& P, Int N = 1);
std::vector<Mat2> stabilizer(const QForm& P);  // all g in SL2(Z) fixing P (finite for definite)

int kronecker(Int a, Int n);
bool is_fundamental(Int D);
int genus_character(Int delta, const QForm& Q);

// Q_tau * sqrt|d| as an exact rational (tau a quadratic point).
Rational q_tau_scaled(const QForm& Q, const QuadraticPoint& tau);
Real q_tau(const QForm& Q, const Complex& tau);
// sign(a) sign(Q_tau) < 0
bool in_interior(const QForm& Q, const QuadraticPoint& tau);

struct Geodesic {
  QForm form;
  Rational center;
  Rational radius_sq;
  Mat2 stabilizer_gen;
};
Geodesic geodesic(const QForm& A, Int N = 1);

}  // namespace bqf
