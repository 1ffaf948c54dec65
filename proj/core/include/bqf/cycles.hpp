#pragma once

#include "bqf/merforms.hpp"
#include "bqf/numerics.hpp"
#include "bqf/qforms.hpp"
#include "bqf/rational.hpp"

#include <optional>
#include <vector>

namespace bqf {

// Piece of S_A between z0 (top of the semicircle) and M z0; integrals run
// from z0 towards M^{-1} z0.
// Parameter s is hyperbolic arclength: z(s) = c + r (tanh s + i sech s),
// and M shifts s by s1.
struct GeodesicSegment {
  QForm A;
  Int level = 1;
  Real center, radius;
  Mat2 M;
  Complex z0, z1;
  Real s1;  // signed length
};
GeodesicSegment geodesic_segment(const QForm& A, Int N = 1);

// tau_Q lies on S_A (exact; A may have square discriminant here)
bool on_geodesic(const QForm& A, const QForm& Q);

// Positive definite forms Q with tau_Q on S_A, parameter in [s_lo, s_lo + s1),
// found by enumerating all forms of discriminant disc_Q.
std::vector<QForm> forms_on_geodesic(const GeodesicSegment& g, Int disc_Q, const Real& s_lo);

// Members of [P] whose CM points lie on the segment.
std::vector<QForm> poles_on_geodesic(const QForm& A, const FormClass& P, Int N = 1);

struct CycleIntegralResult {
  Complex value;
  Real err_est;
  bool pv_used = false;
  std::vector<QuadraticPoint> poles_on_cycle;
  int panels = 0;
  int evaluations = 0;
};

struct CycleOptions {
  double eps_rel = 1e-3;  // detour radius in units of the radius of S_A
  double base_shift = 0;  // move the base point along S_A (hyperbolic length)
};

CycleIntegralResult cycle_integral(const ModularFunction& f, const QForm& A, const Precision& prec,
                                   const CycleOptions& opts = {});

std::optional<BigRationalResult> cycle_integral_rational(const ModularFunction& f, const QForm& A,
                                                         const BigInt& den_bound, const Precision& prec);

}  // namespace bqf
