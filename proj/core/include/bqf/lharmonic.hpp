#pragma once

#include "bqf/modforms.hpp"
#include "bqf/numerics.hpp"
#include "bqf/qforms.hpp"
#include "bqf/rational.hpp"
#include "bqf/zeta.hpp"

#include <optional>
#include <vector>

namespace bqf {

// 1/2 * int_0^x t^{k-3/2} (1-t)^{-1/2} dt, 0 <= x <= 1
Real psi_beta(int k, const Real& x);

struct LocallyHarmonicValue {
  int k = 0;
  FormClass A;
  Complex tau;
  Complex value;
  bool on_singularity = false;  // value is then the two-sided average
  Real err_est;
  long terms = 0;
};

struct LharmonicOptions {
  double cutoff = 0;  // |Q_tau| cutoff of the class sum; 0 picks one from k
  bool reduce = true;  // level 1: evaluate at the fundamental-domain image and transform back
};

// Class sum for F_{1-k,A}. Terms are accumulated in extended double with a
// smooth taper in |Q_tau|, so the error floor is around 1e-17 relative.
LocallyHarmonicValue eval_F(int k, const FormClass& A, const Complex& tau, const Precision& prec,
                            const LharmonicOptions& opts = {});

struct LocalPolynomialP {
  int k = 0;
  FormClass A;
  Rational ck_scaled;             // c_k(A) = ck_scaled * D^{1/2-k}
  std::vector<QForm> interior;    // the forms whose open disc contains tau
  std::vector<QForm> boundary;    // tau on S_Q, counted at weight 1/2
  Complex value;
};

LocalPolynomialP local_polynomial_P(int k, const FormClass& A, const Complex& tau, const Precision& prec,
                                    const ZetaOptions& zopts = {});
// c_k(A) D^{k-1/2} only (exact); 0 for k = 1
Rational ck_scaled(int k, const FormClass& A, const ZetaOptions& zopts = {});

struct CuspExpansion {
  int k = 0;
  FormClass A;
  std::vector<Real> coords;                   // on cusp_basis(k, 1, .)
  std::vector<std::optional<Rational>> rational;
  Real err_est;
  QSeries series;                             // sum coords * basis, coefficients as rationals
};

// f_{k,A} = D^{k-1/2}/pi sum_{Q in [A]} Q(z,1)^{-k} on the level-1 cusp basis,
// by trapezoidal Fourier inversion on Im z = 3/2 (k >= 2)
CuspExpansion fkA_expansion(int k, const FormClass& A, int M, const Precision& prec);

// direct class sum for f_{k,A}(z)
Complex eval_fkA(int k, const FormClass& A, const Complex& z);

struct SplittingResult {
  Complex F;
  Complex P;
  Complex eichler_nonhol;  // coefficient times f*
  Complex eichler_hol;     // coefficient times E_f
  Real residual;
  Real err_est;            // of F alone
};

SplittingResult splitting_residual(int k, const FormClass& A, const Complex& tau, const Precision& prec,
                                   const LharmonicOptions& opts = {});

}  // namespace bqf
