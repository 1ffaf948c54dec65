#pragma once

#include "bqf/modforms.hpp"
#include "bqf/qforms.hpp"
#include "bqf/rational.hpp"
#include "bqf/zeta.hpp"

#include <optional>
#include <vector>

namespace bqf {

struct InteriorFormSet {
  QuadraticPoint tau;
  FormClass A;
  std::vector<QForm> forms;           // tau strictly inside S_Q
  std::vector<QForm> boundary_forms;  // tau on S_Q
};

// Q(tau) := a|tau|^2 + b Re tau + c, exact (tau = u + v i sqrt|d|)
Rational q_tau_numerator(const QForm& Q, const QuadraticPoint& tau);

InteriorFormSet interior_forms(const FormClass& A, const QuadraticPoint& tau);

struct LocalPolyValue {
  int k = 0;
  FormClass A;
  QuadraticPoint tau;
  Rational value;          // |d|^{(k-1)/2} P_{k,A}(tau)
  Rational zeta_term;      // first line (0 for k = 1)
  Rational interior_term;  // second line, boundary forms at weight 1/2
};

// Legendre polynomial coefficients, index = power
std::vector<Rational> legendre_coeffs(int n);

LocalPolyValue local_poly_exact(int k, const FormClass& A, const QuadraticPoint& tau,
                                const ZetaOptions& zopts = {});

// The same quantity with a caller-supplied zeta combination
// Z = D^{k-1/2}(zeta_A(k) + (-1)^k zeta_{-A}(k)); skips the zeta computation.
LocalPolyValue local_poly_with_zeta(int k, const FormClass& A, const QuadraticPoint& tau, const Rational& Z);

// floating check of the definition (test helper), tau arbitrary in H
Real local_poly_numeric(int k, const FormClass& A, const Complex& tau, const Real& zeta_combination);

class RelationCertificateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CombinationTerm {
  Int coeff;
  FormClass A;
};

// sum a_A f_{k,A} = 0 in S_{2k}: pairs each cusp basis element with the
// combination through cycle integrals (level 1 only)
bool verify_cusp_relation(int k, const std::vector<CombinationTerm>& combo, const Precision& prec);

struct RhsOptions {
  ZetaOptions zeta;
  bool trust_certificate = false;  // skip verify_cusp_relation / is_relation
  Precision cert_prec = Precision::make(128, -25);
};

BigRationalResult theorem1_rhs(int k, const FormClass& P, const std::vector<CombinationTerm>& combo,
                               const RhsOptions& opts = {});
BigRationalResult theorem2_rhs(int k, const FormClass& P, const FormClass& A, const RelationVector& lambda,
                               const RhsOptions& opts = {});

}  // namespace bqf
