#include "bqf/rational.hpp"

#include <stdexcept>

namespace bqf {

namespace bm = boost::multiprecision;

BigRationalResult BigRationalResult::direct(const Rational& v) {
  BigRationalResult r;
  r.value = v;
  r.method = RationalMethod::direct;
  r.denominator_bound = bm::denominator(v);
  r.verified_at_two_precisions = false;
  return r;
}

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
  return r;
}

Real to_real(const BigInt& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.backend().data(), MPFR_RNDN);
  return r;
}

Rational to_rational(const Real& x) {
  if (x == 0) return Rational(0);
  BigInt m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.backend().data(), x.backend().data());
  Rational q(m);
  if (e > 0) {
    q *= Rational(BigInt(1) << static_cast<unsigned>(e));
  } else if (e < 0) {
    q /= Rational(BigInt(1) << static_cast<unsigned>(-e));
  }
  return q;
}

std::string to_string(const Rational& q) {
  if (bm::denominator(q) == 1) return bm::numerator(q).str();
  return bm::numerator(q).str() + "/" + bm::denominator(q).str();
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  BigInt num(s.substr(0, slash));
  BigInt den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(num, den);
}

std::optional<Rational> rational_reconstruct(const Real& x, const Real& eps, const BigInt& den_bound) {
  Rational target = to_rational(x);
  Rational tol = to_rational(eps);
  BigInt n = bm::numerator(target);
  BigInt d = bm::denominator(target);
  // convergents h/k
  BigInt h_prev(1), k_prev(0);
  BigInt h, k;
  // first term
  BigInt a = n / d;
  if (n < 0 && a * d != n) a -= 1;  // floor
  h = a;
  k = 1;
  BigInt rn = n - a * d, rd = d;
  while (true) {
    if (k > den_bound) break;
    Rational cand(h, k);
    Rational diff = target - cand;
    if (diff < 0) diff = -diff;
    if (diff <= tol) return cand;
    if (rn == 0) break;
    // continue the expansion on rd/rn
    BigInt an = rd / rn;
    BigInt nrn = rd - an * rn;
    rd = rn;
    rn = nrn;
    BigInt hn = an * h + h_prev;
    BigInt kn = an * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = hn;
    k = kn;
  }
  return std::nullopt;
}

std::optional<BigRationalResult> reconstruct_verified(
    const std::function<Approximation(const Precision&)>& compute, const BigInt& den_bound,
    const Precision& prec, unsigned extra_bits) {
  Approximation lo = compute(prec);
  std::optional<Rational> r1;
  {
    PrecisionScope scope(prec);
    r1 = rational_reconstruct(lo.value, lo.err, den_bound);
  }
  if (!r1) return std::nullopt;
  Precision hi_prec = prec.raised(extra_bits);
  Approximation hi = compute(hi_prec);
  std::optional<Rational> r2;
  {
    PrecisionScope scope(hi_prec);
    r2 = rational_reconstruct(hi.value, hi.err, den_bound);
  }
  if (!r2 || *r1 != *r2) return std::nullopt;
  BigRationalResult out;
  out.value = *r1;
  out.method = RationalMethod::reconstructed;
  out.denominator_bound = den_bound;
  out.verified_at_two_precisions = true;
  return out;
}

}  // namespace bqf
