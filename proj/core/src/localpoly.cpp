#include "bqf/localpoly.hpp"

#include "bqf/cycles.hpp"
#include "bqf/lharmonic.hpp"
#include "bqf/merforms.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace bqf {

namespace bm = boost::multiprecision;

Rational q_tau_numerator(const QForm& Q, const QuadraticPoint& tau) {
  Rational n2 = tau.u * tau.u + tau.v * tau.v * Rational(-tau.d);
  return Rational(Q.a) * n2 + Rational(Q.b) * tau.u + Rational(Q.c);
}

InteriorFormSet interior_forms(const FormClass& A, const QuadraticPoint& tau) {
  const Int D = A.disc();
  if (D <= 0) throw std::domain_error("interior_forms: indefinite class expected");
  if (tau.v <= 0) throw std::domain_error("interior_forms: tau must lie in the upper half plane");
  InteriorFormSet out{tau, A, {}, {}};
  const Int N = A.level;
  // |a| <= sqrt(D) / (2 Im tau)
  const Rational im2 = tau.v * tau.v * Rational(-tau.d);
  const double amax = std::sqrt(static_cast<double>(D) / (4 * im2.convert_to<double>())) + 1;
  const double sD = std::sqrt(static_cast<double>(D));
  const double u = tau.u.convert_to<double>();
  for (Int a = -static_cast<Int>(amax); a <= static_cast<Int>(amax); ++a) {
    if (a == 0 || a % N) continue;
    if (Rational(4 * a * a) * im2 > Rational(D)) continue;
    // |2au + b| <= sqrt(D)
    Int blo = static_cast<Int>(std::floor(-2 * a * u - sD)) - 1;
    Int bhi = static_cast<Int>(std::ceil(-2 * a * u + sD)) + 1;
    for (Int b = blo; b <= bhi; ++b) {
      Int num = b * b - D;
      if (num % (4 * a)) continue;
      QForm q = QForm::unchecked(a, b, num / (4 * a), N);
      Rational nq = q_tau_numerator(q, tau);
      int s = nq.sign() * (a > 0 ? 1 : -1);
      if (s > 0) continue;
      if (!A.contains(q)) continue;
      (s == 0 ? out.boundary_forms : out.forms).push_back(q);
    }
  }
  return out;
}

std::vector<Rational> legendre_coeffs(int n) {
  std::vector<Rational> p0{Rational(1)}, p1{Rational(0), Rational(1)};
  if (n == 0) return p0;
  for (int m = 1; m < n; ++m) {
    std::vector<Rational> p2(m + 2, Rational(0));
    for (int j = 0; j <= m; ++j) p2[j + 1] += Rational(2 * m + 1, m + 1) * p1[j];
    for (int j = 0; j < m; ++j) p2[j] -= Rational(m, m + 1) * p0[j];
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  return p1;
}

namespace {

// 2 sgn(a) (-i sqrt D)^{k-1} |d|^{(k-1)/2} P_{k-1}(i x / sqrt(D|d|)), x = Q(tau)/v
Rational interior_term(int k, Int D, Int absd, const Rational& x, int sgn_a) {
  auto p = legendre_coeffs(k - 1);
  Rational s = 0;
  const BigInt Dd = BigInt(D) * BigInt(absd);
  for (int j = static_cast<int>(p.size()) - 1; j >= 0; --j) {
    if (p[j] == 0) continue;
    if ((k - 1 - j) % 2) throw std::logic_error("Legendre parity violated");
    // (-1)^{k-1} i^{k-1+j}, the power of i is even
    int e = (k - 1 + j) / 2;
    int sign = ((k - 1) % 2 ? -1 : 1) * (e % 2 ? -1 : 1);
    Rational t = p[j] * Rational(bm::pow(Dd, static_cast<unsigned>((k - 1 - j) / 2)));
    Rational xj = 1;
    for (int i = 0; i < j; ++i) xj *= x;
    s += Rational(sign) * t * xj;
  }
  return Rational(2 * sgn_a) * s;
}

std::mutex zmu;
std::map<std::tuple<Int, Int, Int, Int, int>, Rational> zeta_memo;

Rational zeta_combo(const FormClass& A, int k, const ZetaOptions& zo) {
  auto key = std::make_tuple(A.reduced.a, A.reduced.b, A.reduced.c, A.level, k);
  {
    std::lock_guard<std::mutex> lk(zmu);
    auto it = zeta_memo.find(key);
    if (it != zeta_memo.end()) return it->second;
  }
  Rational z = zeta_rational_combination(A, k, zo).value.value;
  std::lock_guard<std::mutex> lk(zmu);
  zeta_memo[key] = z;
  return z;
}

}  // namespace

LocalPolyValue local_poly_with_zeta(int k, const FormClass& A, const QuadraticPoint& tau, const Rational& Z) {
  if (k < 1) throw std::domain_error("local_poly: k >= 1");
  LocalPolyValue out{k, A, tau, Rational(0), Rational(0), Rational(0)};
  const Int D = A.disc(), absd = -tau.d;
  if (k >= 2) {
    // (-1)^k zeta_A + zeta_{-A} = (-1)^k Z / D^{k-1/2}; Im(tau)^{k-1} |d|^{-(k-1)/2} = v^{k-1}
    Rational den = Rational(bm::pow(BigInt(2), static_cast<unsigned>(k - 2)) * (2 * k - 1));
    for (int i = 0; i < k - 1; ++i) den *= tau.v;
    out.zeta_term = (k % 2 ? -Z : Z) / den;
  }
  auto set = interior_forms(A, tau);
  Rational s = 0;
  for (const auto& q : set.forms) s += interior_term(k, D, absd, q_tau_numerator(q, tau) / tau.v, q.a > 0 ? 1 : -1);
  for (const auto& q : set.boundary_forms) s += interior_term(k, D, absd, Rational(0), q.a > 0 ? 1 : -1) / 2;
  out.interior_term = s;
  out.value = out.zeta_term + out.interior_term;
  return out;
}

LocalPolyValue local_poly_exact(int k, const FormClass& A, const QuadraticPoint& tau, const ZetaOptions& zopts) {
  Rational Z = k >= 2 ? zeta_combo(A, k, zopts) : Rational(0);
  return local_poly_with_zeta(k, A, tau, Z);
}

Real local_poly_numeric(int k, const FormClass& A, const Complex& tau, const Real& zeta_combination) {
  const Int D = A.disc();
  Real sD = sqrt(Real(D));
  Real v = tau.im;
  Real out = 0;
  if (k >= 2) {
    Real zt = zeta_combination / pow(Real(2), k - 2) / (2 * k - 1) / pow(v, k - 1);
    out = k % 2 ? Real(-zt) : zt;
  }
  auto p = legendre_coeffs(k - 1);
  const double amax = std::sqrt(static_cast<double>(D)) / (2 * v.convert_to<double>()) + 1;
  const double u = tau.re.convert_to<double>();
  Complex acc(0);
  for (Int a = -static_cast<Int>(amax); a <= static_cast<Int>(amax); ++a) {
    if (a == 0 || a % A.level) continue;
    Int blo = static_cast<Int>(std::floor(-2 * a * u - std::sqrt(double(D)))) - 1;
    Int bhi = static_cast<Int>(std::ceil(-2 * a * u + std::sqrt(double(D)))) + 1;
    for (Int b = blo; b <= bhi; ++b) {
      Int num = b * b - D;
      if (num % (4 * a)) continue;
      QForm q = QForm::unchecked(a, b, num / (4 * a), A.level);
      Real nq = Real(a) * norm(tau) + Real(b) * tau.re + Real(q.c);
      if (!(Real(a) * nq < 0)) continue;
      if (!A.contains(q)) continue;
      Complex y(Real(0), nq / (v * sD));
      Complex pv(0), yj(1);
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (j > 0) yj *= y;
        pv += yj * to_real(p[j]);
      }
      acc += pv * Real(a > 0 ? 2 : -2);
    }
  }
  Complex pre = pow(Complex(Real(0), -sD), k - 1);
  return out + (pre * acc).re;
}

bool verify_cusp_relation(int k, const std::vector<CombinationTerm>& combo, const Precision& prec) {
  if (combo.empty()) return true;
  Int N = combo.front().A.level;
  if (N != 1) throw RelationCertificateError("verify_cusp_relation: level 1 only; pass a trusted certificate");
  int dim = cusp_dim(k);
  if (dim == 0) return true;
  PrecisionScope scope(prec);
  // coordinates of each f_{k,A} on the exact basis, from numeric Fourier inversion
  std::vector<Real> total(dim, Real(0)), scale(dim, Real(0));
  Real err = 0;
  for (const auto& t : combo) {
    auto ex = fkA_expansion(k, t.A, dim + 4, prec);
    for (int i = 0; i < dim; ++i) {
      Real c = ex.coords[i] * Real(t.coeff);
      total[i] += c;
      scale[i] += abs(c);
    }
    err += ex.err_est * abs(Real(t.coeff));
  }
  for (int i = 0; i < dim; ++i)
    if (abs(total[i]) > 10 * err + Real("1e-9") * max(Real(1), scale[i])) return false;
  return true;
}

BigRationalResult theorem1_rhs(int k, const FormClass& P, const std::vector<CombinationTerm>& combo,
                               const RhsOptions& opts) {
  if (P.disc() >= 0) throw std::domain_error("theorem1_rhs: P must be positive definite");
  if (!opts.trust_certificate && !verify_cusp_relation(k, combo, opts.cert_prec))
    throw RelationCertificateError("theorem1_rhs: the combination is not a relation in S_2k");
  QuadraticPoint tau = cm_point(P.representative);
  Rational s = 0;
  for (const auto& t : combo) s += Rational(t.coeff) * local_poly_exact(k, t.A, tau, opts.zeta).value;
  s /= stabilizer_order(P.representative, P.level);
  return BigRationalResult::direct(s);
}

BigRationalResult theorem2_rhs(int k, const FormClass& P, const FormClass& A, const RelationVector& lambda,
                               const RhsOptions& opts) {
  if (P.disc() >= 0) throw std::domain_error("theorem2_rhs: P must be positive definite");
  if (!opts.trust_certificate && !is_relation(lambda))
    throw RelationCertificateError("theorem2_rhs: lambda is not a relation for S_2k");
  QuadraticPoint tau = cm_point(P.representative);
  Rational Z = k >= 2 ? zeta_combo(A, k, opts.zeta) : Rational(0);
  Rational total = 0;
  for (int m = 1; m <= lambda.support(); ++m) {
    if (lambda.lambda[m] == 0) continue;
    Rational inner = 0;
    for (const auto& R : hecke_coset_reps(m, A.level)) {
      QuadraticPoint t = tau;
      t.u = (Rational(R.a) * tau.u + Rational(R.b)) / Rational(R.d);
      t.v = Rational(R.a) * tau.v / Rational(R.d);
      inner += local_poly_with_zeta(k, A, t, Z).value;
    }
    total += Rational(lambda.lambda[m]) * Rational(bm::pow(BigInt(m), static_cast<unsigned>(k - 1))) * inner;
  }
  total /= stabilizer_order(P.representative, P.level);
  return BigRationalResult::direct(total);
}

}  // namespace bqf
