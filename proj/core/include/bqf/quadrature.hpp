#pragma once

#include "bqf/numerics.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bqf {

struct QuadratureResult {
  Complex value;
  Real err_est;
  int panels = 0;
  int evaluations = 0;
};

struct QuadratureOptions {
  std::vector<Real> breakpoints;  // interior points where panels must split
  int order = 0;                  // nodes per panel; 0 -> chosen from precision
  int max_depth = 48;
  int max_panels = 20000;
  Real abs_tol;                   // 0 -> precision target
  Real rel_tol;                   // 0 -> 2^(-bits+24)
  bool sqrt_singular_start = false;  // integrand ~ (x-a)^{-1/2} near a
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& msg, Real a, Real b)
      : std::runtime_error(msg), panel_a(std::move(a)), panel_b(std::move(b)) {}
  Real panel_a;
  Real panel_b;
};

// Nodes/weights of the n-point rule on [-1,1] at the current precision.
struct GaussRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};
GaussRule gauss_legendre_rule(int n);

// Adaptive bisection: a panel is accepted once its one-rule estimate and
// the sum over its two halves agree within tolerance.
QuadratureResult gauss_legendre(const std::function<Complex(const Real&)>& f, const Real& a,
                                const Real& b, const Precision& prec,
                                const QuadratureOptions& opts = {});

}  // namespace bqf
