#include "bqf/halfint.hpp"

#include "bqf/merforms.hpp"
#include "bqf/modforms.hpp"
#include "bqf/special.hpp"
#include "bqf/zeta.hpp"

#include <cmath>
#include <complex>
#include <numeric>

namespace bqf {

namespace {

Int mod(Int x, Int m) {
  Int r = x % m;
  return r < 0 ? r + m : r;
}

Int inverse_mod(Int x, Int m) {
  Int g = m, a = mod(x, m), u0 = 0, u1 = 1;
  while (a) {
    Int q = g / a;
    std::tie(g, a) = std::make_pair(a, g - q * a);
    std::tie(u0, u1) = std::make_pair(u1, u0 - q * u1);
  }
  if (g != 1) throw std::domain_error("inverse_mod: not a unit");
  return mod(u0, m);
}

}  // namespace

namespace {

// residue weights of K^+ before the exponential: real part (nu = 1 mod 4) and i part
void kloosterman_weights(Int m, Int n, Int a, std::vector<Int>& re, std::vector<Int>& im) {
  const Int M = 4 * a;
  re.assign(M, 0);
  im.assign(M, 0);
  const Int mm = mod(m, M), nn = mod(n, M);
  for (Int nu = 1; nu < M; nu += 2) {
    if (std::gcd(nu, M) != 1) continue;
    int chi = kronecker(M, nu);
    if (chi == 0) continue;
    Int r = mod(mm * nu + nn * inverse_mod(nu, M), M);
    (nu % 4 == 1 ? re : im)[r] += chi;
  }
}

// long double version for the far tail of Poincare sums (terms there are tiny)
std::complex<long double> kloosterman_plus_ld(Int m, Int n, Int a) {
  std::vector<Int> re, im;
  kloosterman_weights(m, n, a, re, im);
  const Int M = 4 * a;
  const long double tp = 2 * 3.141592653589793238462643383279502884L / M;
  std::complex<long double> s(0);
  for (Int r = 0; r < M; ++r)
    if (re[r] != 0 || im[r] != 0) s += std::polar(1.0L, tp * r) * std::complex<long double>(re[r], im[r]);
  long double k4 = (a % 2) ? 2 : 1;
  return s * std::complex<long double>(1, -1) * (k4 / 4);
}

}  // namespace

Complex kloosterman_plus(Int m, Int n, Int a) {
  if (a < 1) throw std::domain_error("kloosterman_plus: a >= 1");
  const Int M = 4 * a;
  std::vector<Int> re, im;
  kloosterman_weights(m, n, a, re, im);
  Complex s(0);
  for (Int r = 0; r < M; ++r)
    if (re[r] != 0 || im[r] != 0) s += e2pii(Real(r) / Real(M)) * Complex(Real(re[r]), Real(im[r]));
  int k4 = (a % 2) ? 1 : 0;  // (4/a)
  return s * Complex(Real(1), Real(-1)) * (Real(1 + k4) / 4);
}

Complex salie_sum(Int a, Int Delta, Int delta, Int n) {
  if (a < 1) throw std::domain_error("salie_sum: a >= 1");
  const Int D = Delta * delta;
  Complex s(0);
  for (Int b : sqrt_mod_4a(D, a)) {
    QForm q = QForm::unchecked(a, b, (b * b - D) / (4 * a));
    int chi = genus_character(delta, q);
    if (chi == 0) continue;
    s += e2pii(Real(mod(n * b, 2 * a)) / Real(2 * a)) * Real(chi);
  }
  return s;
}

Complex salie_via_kloosterman(Int a, Int Delta, Int delta, Int n) {
  Complex s(0);
  Int g = std::gcd(std::llabs(n), a);
  if (n == 0) g = a;
  for (Int m = 1; m <= g; ++m) {
    if (g % m) continue;
    int chi = kronecker(delta, m);
    if (chi == 0) continue;
    Int nm = n / m;
    s += kloosterman_plus(Delta, nm * nm * delta, a / m) * (Real(chi) * sqrt(Real(m) / Real(a)));
  }
  return s;
}

PoincareCoeff poincare_coeff_plus(int k, Int n, Int m, Int N, const Precision& prec, Int a_cutoff) {
  if (n >= 0 || m <= 0) throw std::domain_error("poincare_coeff_plus: n < 0 < m");
  auto ok = [&](Int x) {
    Int r = mod(k % 2 ? -x : x, 4);
    return r == 0 || r == 3;
  };
  if (!ok(n) || !ok(m)) throw std::domain_error("poincare_coeff_plus: plus-space congruence fails");
  PrecisionScope scope(prec);
  Int X = a_cutoff;
  if (X <= 0) {
    // terms decay like a^{1/2-k} (k >= 2); k = 1 converges only conditionally
    double tgt = prec.bits * 0.30103 * 0.4;
    X = k >= 2 ? static_cast<Int>(std::pow(10.0, tgt / (k - 1.5))) : 4000;
    X = std::clamp<Int>(X, 64, 4000);
  }
  const Int sgn = (k % 2) ? 1 : -1;  // (-1)^{k+1}
  const Real x0 = pi() * sqrt(Real(m) * Real(-n));
  Real sum(0), last(0);
  for (Int a = N; a <= X; a += N) {
    Real Kre = a <= 64 ? kloosterman_plus(sgn * n, sgn * m, a).re
                       : Real(static_cast<double>(kloosterman_plus_ld(sgn * n, sgn * m, a).real()));
    Real t = Kre / Real(a) * bessel_i_half(k, x0 / Real(a));
    sum += t;
    if (a > X / 2) last = max(last, abs(t));
  }
  Real pre = pi() * sqrt(Real(2)) * pow(Real(m) / Real(-n), Real(1) / 4 - Real(k) / 2);
  if ((k / 2) % 2 == 0) pre = -pre;  // -(-1)^{floor(k/2)}
  // extra (-1)^k: without it odd k gives minus Zagier's f_3 at k = 1
  if (k % 2) pre = -pre;
  PoincareCoeff out;
  out.value = pre * sum;
  // crude: tail ~ X * largest recent term / (k - 3/2)
  out.tail_bound = abs(pre) * last * Real(X) / Real(std::max(0.5, k - 1.5));
  out.cutoff = X;
  return out;
}

Complex twisted_coeff_via_poincare(int k, Int Delta, Int delta, Int n, Int N, const Precision& prec, Int a_cutoff) {
  if (n < 1) throw std::domain_error("twisted_coeff_via_poincare: n >= 1");
  PrecisionScope scope(prec);
  const Int ad = std::llabs(delta);
  Real s(0);
  for (Int m = 1; m <= n; ++m) {
    if (n % m) continue;
    int chi = kronecker(delta, m);
    if (chi == 0) continue;
    Int nm = n / m;
    s += Real(chi) * pow(Real(m), -k) * poincare_coeff_plus(k, -std::llabs(Delta), nm * nm * ad, N, prec, a_cutoff).value;
  }
  Real pre = pow(Real(2), k) * pow(pi(), k - 1) * pow(Real(ad), Real(k) - Real(1) / 2) * pow(Real(n), 2 * k - 1) /
             factorial(k - 1);
  if ((k / 2) % 2 == 0) pre = -pre;
  Real c = pre * s;
  if (k == 1) {
    // divisor-sum term, level N
    Rational cls = 0;
    for (const auto& P : enumerate_classes(Delta * delta, N)) {
      int chi = genus_character(delta, P.representative);
      if (chi) cls += Rational(chi, stabilizer_order(P.representative, N));
    }
    Rational lev = 1;
    for (Int p = 2; p <= N; ++p)
      if (N % p == 0 && mobius(p) != 0 && std::gcd(p, N) == p) {
        bool prime = true;
        for (Int q = 2; q * q <= p; ++q) prime = prime && (p % q);
        if (prime) lev *= Rational(p * p, p * p - 1);
      }
    Rational ds = 0;
    for (Int d = 1; d <= N; ++d) {
      if (N % d || (d * n) % N) continue;
      ds += Rational(mobius(d), d * d) * Rational(sigma(d * n / N));
    }
    c += to_real(Rational(12) * lev * ds * cls);
  }
  return Complex(c);
}

Complex twisted_coeff_via_classes(int k, Int Delta, Int delta, Int n, const Precision& prec, Int a_cutoff) {
  PrecisionScope scope(prec);
  Complex s(0);
  for (const auto& P : enumerate_classes(Delta * delta, 1)) {
    int chi = genus_character(delta, P.representative);
    if (chi) s += fourier_coeff_fkP(P, k, n, prec, a_cutoff) * Real(chi);
  }
  return s;
}

bool RatCoefReport::all_rational() const {
  for (const auto& e : entries)
    if (!e.rational) return false;
  return true;
}

RatCoefReport ratcoef_check(int k, Int delta, const std::map<Int, Int>& principal_part, Int n_max,
                            const Precision& prec, const BigInt& den_bound) {
  PrecisionScope scope(prec);
  RatCoefReport rep;
  rep.k = k;
  rep.delta = delta;
  rep.principal_part = principal_part;
  const Int ad = std::llabs(delta);
  Real norm_ = pow(pi(), 1 - k) * pow(Real(ad), Real(1) / 2 - Real(k));
  for (Int n = 1; n <= n_max; ++n) {
    Real v(0), err(0);
    for (const auto& [D, c] : principal_part) {
      if (c == 0) continue;
      Complex cf = twisted_coeff_via_poincare(k, D, delta, n, 1, prec);
      v += Real(c) * cf.re;
    }
    v *= norm_;
    // estimate from halving the a-cutoff
    Real v_half(0);
    for (const auto& [D, c] : principal_part) {
      if (c == 0) continue;
      Int X = poincare_coeff_plus(k, -std::llabs(D), ad, 1, prec).cutoff;
      v_half += Real(c) * twisted_coeff_via_poincare(k, D, delta, n, 1, prec, X / 2).re;
    }
    v_half *= norm_;
    err = abs(v - v_half) * 4 + eps_rel() * abs(v) * 1024;
    RatCoefEntry e{n, v, err, std::nullopt};
    if (principal_part.empty() || std::all_of(principal_part.begin(), principal_part.end(),
                                              [](const auto& p) { return p.second == 0; }))
      e.rational = Rational(0);
    else
      e.rational = rational_reconstruct(v, err, den_bound);
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace bqf
