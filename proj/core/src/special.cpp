#include "bqf/special.hpp"

#include <stdexcept>

namespace bqf {

namespace bm = boost::multiprecision;

Real tgamma_real(const Real& x) {
  Real r;
  mpfr_gamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

Real factorial(int n) {
  Real r(1);
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Real binomial(int n, int k) {
  if (k < 0 || k > n) return Real(0);
  Real r(1);
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

Real bessel_i_half_series(int k, const Real& x) {
  if (k < 1) throw std::domain_error("bessel_i_half: order must be k - 1/2 with k >= 1");
  Real nu = Real(k) - Real(0.5);
  Real half = x / 2;
  Real h2 = half * half;
  Real term = bm::pow(half, nu) / tgamma_real(nu + 1);
  Real sum = term;
  Real tiny = eps_rel();
  for (int m = 1; m < 100000; ++m) {
    term *= h2 / (Real(m) * (Real(m) + nu));
    sum += term;
    if (term <= sum * tiny && Real(m) > half) break;
  }
  return sum;
}

Real bessel_i_half(int k, const Real& x) {
  if (k < 1) throw std::domain_error("bessel_i_half: order must be k - 1/2 with k >= 1");
  if (!(x > 0)) throw std::domain_error("bessel_i_half: x must be positive");
  if (x > Real(1e8)) throw std::range_error("bessel_i_half: argument beyond supported range");
  const int n = k - 1;
  if (x < Real(4 * n + 40)) {
    Real out;
    {
      PrecisionScope guard(current_bits() + 32);
      Real xx = rounded(x);
      out = bessel_i_half_series(k, xx);
    }
    return rounded(out);
  }
  const unsigned outer = current_bits();
  // closed form: (2 pi x)^{-1/2} [e^x sum (-1)^j a_j x^{-j} - (-1)^n e^{-x} sum a_j x^{-j}]
  PrecisionScope guard(current_bits() + 64);
  Real xx = rounded(x);
  Real plus(0), minus(0);
  Real aj(1);
  Real xinv = Real(1) / xx;
  Real xp(1);
  for (int j = 0; j <= n; ++j) {
    if (j > 0) {
      // a_j = (n+j)!/(j!(n-j)! 2^j)
      aj *= Real((n + j) * (n - j + 1)) / Real(2 * j);
      xp *= xinv;
    }
    Real t = aj * xp;
    plus += (j % 2 ? -t : t);
    minus += t;
  }
  Real val = bm::exp(xx) * plus - (n % 2 ? Real(-1) : Real(1)) * bm::exp(-xx) * minus;
  val /= bm::sqrt(2 * pi() * xx);
  PrecisionScope back(outer);
  return rounded(val);
}

Real complete_beta(const Real& a, const Real& b) {
  return tgamma_real(a) * tgamma_real(b) / tgamma_real(a + b);
}

namespace {
// sum_m (1-b)_m/m! v^{a+m}/(a+m), i.e. int_0^v t^{a-1}(1-t)^{b-1} dt for v <= 1/2
Real beta_series(const Real& v, const Real& a, const Real& b) {
  if (v == 0) return Real(0);
  Real coef(1);  // (1-b)_m / m!
  Real vp = bm::pow(v, a);
  Real sum = vp / a;
  Real tiny = eps_rel();
  for (int m = 1; m < 100000; ++m) {
    coef *= (Real(m - 1) + 1 - b) / m;
    vp *= v;
    Real t = coef * vp / (a + m);
    sum += t;
    if (bm::abs(t) <= bm::abs(sum) * tiny && bm::abs(coef) < Real(1e6)) break;
    if (coef == 0) break;
  }
  return sum;
}
}  // namespace

Real incomplete_beta(const Real& v, const Real& a, const Real& b) {
  if (v < 0 || v > 1) throw std::domain_error("incomplete_beta: v outside [0,1]");
  if (!(a > 0) || !(b > 0)) throw std::domain_error("incomplete_beta: a, b must be positive");
  PrecisionScope guard(current_bits() + 32);
  Real vv = v, aa = a, bb = b;
  if (vv == 0) return Real(0);
  if (vv <= Real(0.5)) return beta_series(vv, aa, bb);
  Real s = 1 - vv;
  return complete_beta(aa, bb) - beta_series(s, bb, aa);
}

Real psi_k(int k, const Real& v) {
  return incomplete_beta(v, Real(k) - Real(0.5), Real(0.5)) / 2;
}

Real upper_gamma_int(int s, const Real& x) {
  if (s < 1) throw std::domain_error("upper_gamma_int: s >= 1");
  // (s-1)! e^{-x} sum_{j<s} x^j/j!
  Real term(1), sum(1);
  for (int j = 1; j < s; ++j) {
    term *= x / j;
    sum += term;
  }
  return factorial(s - 1) * bm::exp(-x) * sum;
}

}  // namespace bqf
