#pragma once

#include "bqf/numerics.hpp"

#include <vector>

namespace bqf {

// I_{k-1/2}(x) for integer k >= 1, x > 0.
Real bessel_i_half(int k, const Real& x);

// Power series, used as the reference in tests and for small x.
Real bessel_i_half_series(int k, const Real& x);

// Three-term recurrence; works for any ring-like T (Rational, Real, Complex, ...).
template <typename T>
T legendre_p(int n, const T& x) {
  T p0(1);
  if (n == 0) return p0;
  T p1 = x;
  for (int m = 1; m < n; ++m) {
    T p2 = (T(2 * m + 1) * x * p1 - T(m) * p0) / T(m + 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// beta(v; a, b) = int_0^v t^{a-1}(1-t)^{b-1} dt, 0 <= v <= 1, a, b > 0.
Real incomplete_beta(const Real& v, const Real& a, const Real& b);
Real complete_beta(const Real& a, const Real& b);

// psi(v) = beta(v; k - 1/2, 1/2)/2
Real psi_k(int k, const Real& v);

Real factorial(int n);
Real binomial(int n, int k);
Real tgamma_real(const Real& x);

// Gamma(s, x) for integer s >= 1 (finite sum form).
Real upper_gamma_int(int s, const Real& x);

}  // namespace bqf
