#pragma once

#include "bqf/numerics.hpp"
#include "bqf/qforms.hpp"
#include "bqf/rational.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace bqf {

// Exact truncated q-expansion sum_{n <= M} c(n) q^n.
struct QSeries {
  int weight = 0;
  Int level = 1;
  std::vector<Rational> c;

  QSeries() = default;
  QSeries(int w, Int N, std::vector<Rational> coeffs) : weight(w), level(N), c(std::move(coeffs)) {}
  static QSeries zero(int w, int M, Int N = 1);
  static QSeries one(int M);

  int M() const { return static_cast<int>(c.size()) - 1; }
  const Rational& operator[](int n) const { return c.at(n); }
  Rational coeff(int n) const { return n >= 0 && n <= M() ? c[n] : Rational(0); }
  QSeries truncated(int M) const;
  bool is_zero() const;

  QSeries operator+(const QSeries& o) const;
  QSeries operator-(const QSeries& o) const;
  QSeries operator*(const QSeries& o) const;  // weights add, truncation = min
  QSeries operator*(const Rational& s) const;
  bool operator==(const QSeries& o) const { return c == o.c && weight == o.weight; }
};

QSeries qpow(const QSeries& f, int e);

Rational bernoulli(int n);
QSeries delta_coeffs(int M);
QSeries eisenstein_2k_level1(int k, int M);  // weight 2k, constant term 1

struct E2Star {
  QSeries holomorphic;
  Rational nonhol_coeff;  // E2* = hol - nonhol_coeff/(pi y)
};
E2Star e2_star_level(Int N, int M);

Int sigma(Int n, int power = 1);
Int mobius(Int n);

int cusp_dim(int k);                              // dim S_{2k}(SL2(Z))
int modular_dim(int weight);                      // dim M_weight
std::vector<QSeries> cusp_basis(int k, Int N, int M);   // weight 2k
// monomials Delta^c E4^a E6^b spanning M_weight (with_cusp_only: c >= 1)
std::vector<QSeries> monomial_basis(int weight, int M, bool cusp_only);

struct RelationVector {
  std::vector<BigInt> lambda;  // lambda[m], m >= 1; lambda[0] unused
  int k = 1;
  Int level = 1;
  int support() const;  // largest m with lambda_m != 0
  std::string str() const;  // "l1,l2,..." up to support
  static RelationVector parse(const std::string& s, int k, Int N = 1);
};

std::vector<RelationVector> find_relations(int k, Int N, int support_bound);
bool is_relation(const RelationVector& r, int M = 64);

std::vector<Mat2> hecke_coset_reps(Int m, Int N = 1);
QSeries hecke_on_qseries(const QSeries& f, Int m);

// Numeric evaluation with coefficients converted once per precision.
class SeriesEvaluator {
 public:
  explicit SeriesEvaluator(QSeries f) : f_(std::move(f)) {}
  const QSeries& series() const { return f_; }
  // sum_n c(n) (2 pi i n)^j q^n; throws if truncation is too short for the target
  Complex eval(const Complex& z, int deriv = 0) const;
  // Taylor coefficients t_0..t_{order} at z (derivatives divided by j!)
  std::vector<Complex> taylor(const Complex& z, int order) const;

 private:
  const std::vector<Real>& coeffs() const;
  QSeries f_;
  mutable std::mutex mu_;
  mutable std::map<unsigned, std::vector<Real>> cache_;
};

Complex eval_qseries(const QSeries& f, const Complex& z);

Complex eichler_holomorphic(const QSeries& f, const Complex& tau, const Precision& prec);
// termwise with upper incomplete gamma; f must have real coefficients
Complex eichler_nonholomorphic(const QSeries& f, const Complex& tau, const Precision& prec);
// the defining integral along z = -conj(tau) + i t, used as oracle
Complex eichler_nonholomorphic_quadrature(const QSeries& f, const Complex& tau, const Precision& prec);

}  // namespace bqf
