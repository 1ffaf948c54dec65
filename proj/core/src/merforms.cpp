#include "bqf/merforms.hpp"

#include "bqf/special.hpp"
#include "bqf/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace bqf {

namespace bm = boost::multiprecision;

// ---------------------------------------------------------- ModularFunction

ModularFunction ModularFunction::operator+(const ModularFunction& o) const {
  return combine({{Complex(1), *this}, {Complex(1), o}});
}

ModularFunction ModularFunction::operator-(const ModularFunction& o) const {
  return combine({{Complex(1), *this}, {Complex(-1), o}});
}

ModularFunction ModularFunction::scaled(const Complex& s, const std::string& coeff_tag) const {
  ModularFunction r = *this;
  auto ev = evaluator;
  r.evaluator = [ev, s](const Complex& z) { return ev(z) * s; };
  r.tag = coeff_tag + "*" + tag;
  return r;
}

ModularFunction ModularFunction::zero(int weight, Int N) {
  ModularFunction f;
  f.weight = weight;
  f.level = N;
  f.tag = "0";
  f.evaluator = [](const Complex&) { return Complex(0); };
  return f;
}

ModularFunction ModularFunction::from_qseries(const QSeries& s, const std::string& tag) {
  ModularFunction f;
  f.weight = s.weight;
  f.level = s.level;
  f.tag = tag;
  auto ev = std::make_shared<SeriesEvaluator>(s);
  const int w = s.weight;
  f.evaluator = [ev, w](const Complex& z) {
    if (z.im > Real("0.8")) return ev->eval(z);
    FDReduction r = reduce_to_fd(z);
    return ev->eval(r.z) / pow(r.gamma.j(z), w);
  };
  return f;
}

ModularFunction combine(const std::vector<std::pair<Complex, ModularFunction>>& terms) {
  if (terms.empty()) throw std::invalid_argument("combine: no terms");
  ModularFunction f;
  f.weight = terms.front().second.weight;
  f.level = terms.front().second.level;
  std::ostringstream tag;
  std::vector<std::pair<Complex, std::function<Complex(const Complex&)>>> evs;
  bool first = true;
  for (const auto& [c, g] : terms) {
    if (g.weight != f.weight) throw std::invalid_argument("combine: weights differ");
    f.level = std::max(f.level, g.level);
    if (!first) tag << " + ";
    first = false;
    tag << to_string(c, 8) << "*" << g.tag;
    evs.emplace_back(c, g.evaluator);
    for (const auto& p : g.poles) f.poles.push_back(p);
  }
  f.tag = tag.str();
  f.evaluator = [evs](const Complex& z) {
    Complex s(0);
    for (const auto& [c, e] : evs) s += c * e(z);
    return s;
  };
  return f;
}

FDReduction reduce_to_fd(const Complex& z) {
  if (!(z.im > 0)) throw std::domain_error("reduce_to_fd: point not in the upper half plane");
  Mat2 g = Mat2::identity();
  Complex w = z;
  for (int it = 0; it < 10000; ++it) {
    Real shift = floor(w.re + Real(1) / 2);
    Int n = shift.convert_to<long long>();
    if (n != 0) {
      w.re -= Real(n);
      g = Mat2{1, -n, 0, 1} * g;
    }
    if (norm(w) < 1) {
      w = Complex(-1) / w;
      g = Mat2{0, -1, 1, 0} * g;
      continue;
    }
    return {w, g};
  }
  throw std::runtime_error("reduce_to_fd: no convergence");
}

// ---------------------------------------------------- complex power series

namespace {

using CS = std::vector<Complex>;

CS cs_mul(const CS& a, const CS& b, std::size_t n) {
  CS r(n, Complex(0));
  for (std::size_t i = 0; i < n && i < a.size(); ++i) {
    if (a[i].re == 0 && a[i].im == 0) continue;
    for (std::size_t j = 0; i + j < n && j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

CS cs_pow(const CS& a, int e, std::size_t n) {
  CS r(n, Complex(0));
  r[0] = Complex(1);
  CS b = a;
  b.resize(n, Complex(0));
  while (e > 0) {
    if (e & 1) r = cs_mul(r, b, n);
    e >>= 1;
    if (e) b = cs_mul(b, b, n);
  }
  return r;
}

CS cs_inv(const CS& a, std::size_t n) {
  CS r(n, Complex(0));
  r[0] = Complex(1) / a[0];
  for (std::size_t m = 1; m < n; ++m) {
    Complex s(0);
    for (std::size_t j = 1; j <= m && j < a.size(); ++j) s += a[j] * r[m - j];
    r[m] = -(s * r[0]);
  }
  return r;
}

CS from_rational(const QSeries& s) {
  CS r;
  r.reserve(s.c.size());
  for (const auto& x : s.c) r.emplace_back(to_real(x));
  return r;
}

CS round_cs(const CS& a) {
  CS r;
  r.reserve(a.size());
  for (const auto& x : a) r.emplace_back(rounded(x.re), rounded(x.im));
  return r;
}

// sum c_n q^n, with the tail check of SeriesEvaluator
Complex eval_cs(const CS& c, const Complex& z, int deriv = 0) {
  Complex q = e2pii(z.re) * exp(-2 * pi() * z.im);
  Real aq = abs(q);
  Complex qn(1), sum(0);
  Real tp = 2 * pi();
  Real last(0);
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (n > 0) qn *= q;
    Complex t = qn * c[n];
    if (deriv > 0) t = t * pow(Complex(Real(0), tp * Real(static_cast<long>(n))), deriv);
    sum += t;
    if (!(c[n].re == 0 && c[n].im == 0)) last = abs(t);
  }
  Real tail = last * aq / (1 - aq) * 4;
  if (tail > eps_rel() * 65536 * max(Real(1), abs(sum)))
    throw std::range_error("q-expansion truncated too early");
  return sum;
}

// ------------------------------------------------------------ least squares

// Householder QR least squares, returns x and the relative residual
std::vector<Real> lstsq(std::vector<std::vector<Real>> A, std::vector<Real> b, Real& rel_residual,
                        Real& cond_ratio) {
  const std::size_t m = A.size(), n = A.front().size();
  if (m < n) throw std::runtime_error("lstsq: underdetermined system");
  std::vector<std::vector<Real>> A0 = A;
  std::vector<Real> b0 = b;
  // column scaling
  std::vector<Real> scale(n);
  for (std::size_t j = 0; j < n; ++j) {
    Real s = 0;
    for (std::size_t i = 0; i < m; ++i) s += A[i][j] * A[i][j];
    scale[j] = s > 0 ? sqrt(s) : Real(1);
    for (std::size_t i = 0; i < m; ++i) A[i][j] /= scale[j];
  }
  for (std::size_t j = 0; j < n; ++j) {
    Real nrm = 0;
    for (std::size_t i = j; i < m; ++i) nrm += A[i][j] * A[i][j];
    nrm = sqrt(nrm);
    if (nrm == 0) continue;
    Real alpha = A[j][j] > 0 ? Real(-nrm) : nrm;
    std::vector<Real> v(m, Real(0));
    for (std::size_t i = j; i < m; ++i) v[i] = A[i][j];
    v[j] -= alpha;
    Real vn = 0;
    for (std::size_t i = j; i < m; ++i) vn += v[i] * v[i];
    if (vn == 0) continue;
    for (std::size_t c = j; c < n; ++c) {
      Real d = 0;
      for (std::size_t i = j; i < m; ++i) d += v[i] * A[i][c];
      d = 2 * d / vn;
      for (std::size_t i = j; i < m; ++i) A[i][c] -= d * v[i];
    }
    Real d = 0;
    for (std::size_t i = j; i < m; ++i) d += v[i] * b[i];
    d = 2 * d / vn;
    for (std::size_t i = j; i < m; ++i) b[i] -= d * v[i];
  }
  Real dmax = 0, dmin = -1;
  for (std::size_t j = 0; j < n; ++j) {
    Real a = abs(A[j][j]);
    dmax = max(dmax, a);
    dmin = dmin < 0 ? a : min(dmin, a);
  }
  cond_ratio = dmax > 0 ? dmin / dmax : Real(0);
  std::vector<Real> x(n, Real(0));
  for (std::size_t jj = n; jj-- > 0;) {
    Real s = b[jj];
    for (std::size_t c = jj + 1; c < n; ++c) s -= A[jj][c] * x[c];
    x[jj] = s / A[jj][jj];
  }
  for (std::size_t j = 0; j < n; ++j) x[j] /= scale[j];
  Real res = 0, bn = 0;
  for (std::size_t i = 0; i < m; ++i) {
    Real s = -b0[i];
    for (std::size_t j = 0; j < n; ++j) s += A0[i][j] * x[j];
    res += s * s;
    bn += b0[i] * b0[i];
  }
  rel_residual = bn > 0 ? Real(sqrt(res / bn)) : Real(sqrt(res));
  return x;
}

// --------------------------------------------------- algebraic construction

enum class PsiKind { rho, i, generic };

struct Algebraic {
  QForm R;
  int k = 0;
  int stab = 1;
  PsiKind kind = PsiKind::generic;
  Complex tau;
  CS G;    // numerator q-coefficients
  CS Psi;  // denominator base q-coefficients
  int power = 1;
  CS f_coeffs;  // q-coefficients of f itself (first few)

  Complex eval_reduced(const Complex& w) const {
    // pole proximity on the fundamental-domain images of tau
    for (const Complex& t : {tau, tau + Complex(1), tau - Complex(1), Complex(-1) / tau}) {
      if (abs(w - t) < Real("1e-8")) throw PoleProximityError("f_{k,P}: point within 1e-8 of a pole");
    }
    Complex g = eval_cs(G, w);
    Complex p = eval_cs(Psi, w);
    return g / pow(p, power);
  }
};

int terms_estimate(int weight, int extra_deriv, unsigned bits) {
  const double y = std::sqrt(3.0) / 2;
  for (int n = 8;; ++n) {
    double lg = (weight + extra_deriv + 2.0) * std::log(n + 1.0) + weight * 1.5 - 2 * M_PI * y * n;
    if (lg < -(bits + 24.0) * std::log(2.0)) return n + 4;
  }
}

Complex jvalue(const Complex& tau) {
  SeriesEvaluator e4(eisenstein_2k_level1(2, 200)), dl(delta_coeffs(200));
  Complex a = e4.eval(tau);
  return a * a * a / dl.eval(tau);
}

std::shared_ptr<const Algebraic> build_algebraic(const QForm& R, int k, unsigned bits);

std::mutex alg_mu;
std::map<std::tuple<Int, Int, Int, int, unsigned>, std::shared_ptr<const Algebraic>> alg_cache;

std::shared_ptr<const Algebraic> algebraic(const QForm& P, int k, unsigned bits) {
  QForm R = reduce(P);
  auto key = std::make_tuple(R.a, R.b, R.c, k, bits);
  {
    std::lock_guard<std::mutex> lk(alg_mu);
    auto it = alg_cache.find(key);
    if (it != alg_cache.end()) return it->second;
  }
  auto a = build_algebraic(R, k, bits);
  std::lock_guard<std::mutex> lk(alg_mu);
  alg_cache[key] = a;
  return a;
}

std::shared_ptr<const Algebraic> build_algebraic(const QForm& R, int k, unsigned bits) {
  auto out = std::make_shared<Algebraic>();
  out->R = R;
  out->k = k;
  out->stab = stabilizer_order(R, 1);
  Int g = R.content();
  QForm prim = QForm::unchecked(R.a / g, R.b / g, R.c / g);
  if (prim == QForm::unchecked(1, 1, 1)) out->kind = PsiKind::rho;
  else if (prim == QForm::unchecked(1, 0, 1)) out->kind = PsiKind::i;
  else out->kind = PsiKind::generic;

  const unsigned work_bits = bits + 64;
  PrecisionScope scope(work_bits);
  out->tau = cm_point(R).to_complex();
  const Complex& tau = out->tau;
  const int psi_weight = out->kind == PsiKind::rho ? 4 : out->kind == PsiKind::i ? 6 : 12;
  const int W = k == 1 ? 2 + psi_weight : 2 * k + k * psi_weight;
  int M = terms_estimate(W, k, work_bits);

  for (int attempt = 0; attempt < 4; ++attempt, M *= 2) {
    try {
      QSeries E4 = eisenstein_2k_level1(2, M), E6 = eisenstein_2k_level1(3, M), Dl = delta_coeffs(M);
      Complex jt(0);
      CS psi;
      if (out->kind == PsiKind::rho) psi = from_rational(E4);
      else if (out->kind == PsiKind::i) psi = from_rational(E6);
      else {
        jt = jvalue(tau);
        CS e43 = from_rational(qpow(E4, 3)), dl = from_rational(Dl);
        psi.resize(M + 1);
        for (int n = 0; n <= M; ++n) psi[n] = e43[n] - jt * dl[n];
      }
      if (k == 1) {
        Real c = Real(-2) / out->stab;
        CS num;
        if (out->kind == PsiKind::rho) num = from_rational(E6);
        else if (out->kind == PsiKind::i) num = from_rational(E4 * E4);
        else num = from_rational(E4 * E4 * E6);
        for (auto& x : num) x *= c;
        out->G = num;
        out->Psi = psi;
        out->power = 1;
      } else {
        auto basis = monomial_basis(W, M, true);
        const int nb = static_cast<int>(basis.size());
        // Taylor data of psi at tau
        std::vector<Complex> pt(k + 1);
        {
          Complex qt = e2pii(tau.re) * exp(-2 * pi() * tau.im);
          (void)qt;
          for (int j = 0; j <= k; ++j) {
            Real fact = factorial(j);
            pt[j] = eval_cs(psi, tau, j) / fact;
          }
        }
        // target Taylor coefficients of psi^k * C * R(z,1)^{-k} at tau
        Real d_abs = Real(-R.disc());
        Real C = pow(sqrt(d_abs), 2 * k - 1) / pi();
        Complex two_iv(Real(0), 2 * tau.im);
        CS base(k);  // psi(z)/(z - tau) = sum p_{j+1} w^j
        for (int j = 0; j < k; ++j) base[j] = pt[j + 1];
        CS pk = cs_pow(base, k, k);
        CS inv2(k);  // (2iv + w)^{-k}
        {
          Complex p2 = pow(two_iv, -k);
          Real bin = 1;
          for (int m = 0; m < k; ++m) {
            if (m > 0) bin = bin * (k + m - 1) / m;
            Complex t = p2 * pow(two_iv, -m) * bin;
            inv2[m] = (m % 2) ? -t : t;
          }
        }
        CS target = cs_mul(pk, inv2, k);
        Real ak = pow(Real(R.a), -k);
        for (auto& t : target) t = t * (C * ak);

        std::vector<std::vector<Complex>> rows;  // complex equations: coeffs then rhs
        for (int j = 0; j < k; ++j) {
          std::vector<Complex> row(nb + 1);
          for (int i = 0; i < nb; ++i) {
            SeriesEvaluator ev(basis[i]);
            row[i] = ev.eval(tau, j) / factorial(j);
          }
          row[nb] = target[j];
          rows.push_back(row);
        }
        int extra = cusp_dim(k);
        if (extra > 0) {
          CS psik_inv = cs_inv(cs_pow(psi, k, extra + 1), extra + 1);
          for (int n = 1; n <= extra; ++n) {
            std::vector<Complex> row(nb + 1);
            for (int i = 0; i < nb; ++i) {
              CS bi = from_rational(basis[i].truncated(extra));
              Complex s(0);
              for (int j = 1; j <= n; ++j) s += bi[j] * psik_inv[n - j];
              row[i] = s;
            }
            PrecisionScope inner(work_bits);
            row[nb] = fourier_coeff_fkP(FormClass(R), k, n, Precision::make(work_bits, -30));
            rows.push_back(row);
          }
        }
        // real-ify: unknowns (re x_i, im x_i)
        std::vector<std::vector<Real>> A;
        std::vector<Real> b;
        for (const auto& row : rows) {
          std::vector<Real> r1(2 * nb), r2(2 * nb);
          for (int i = 0; i < nb; ++i) {
            r1[i] = row[i].re;
            r1[nb + i] = -row[i].im;
            r2[i] = row[i].im;
            r2[nb + i] = row[i].re;
          }
          A.push_back(r1);
          b.push_back(row[nb].re);
          A.push_back(r2);
          b.push_back(row[nb].im);
        }
        Real resid, cond;
        auto x = lstsq(A, b, resid, cond);
        if (resid > ldexp2(-static_cast<int>(bits) + 8) || cond < ldexp2(-static_cast<int>(work_bits) + 40)) {
          throw std::runtime_error("f_{k,P}: algebraic system inconsistent or singular (residual " +
                                   to_string(resid, 5) + ", cond " + to_string(cond, 5) + ")");
        }
        CS G(M + 1, Complex(0));
        for (int i = 0; i < nb; ++i) {
          Complex xi(x[i], x[nb + i]);
          CS bi = from_rational(basis[i]);
          for (int n = 0; n <= M; ++n) G[n] += xi * bi[n];
        }
        out->G = G;
        out->Psi = psi;
        out->power = k;
      }
      // a q-expansion check at the top of the fundamental domain catches short truncation
      eval_cs(out->G, Complex(Real("0.5"), sqrt(Real(3)) / 2));
      eval_cs(out->Psi, Complex(Real("0.5"), sqrt(Real(3)) / 2));
      {
        const int nf = 8;
        CS inv = cs_inv(cs_pow(out->Psi, out->power, nf), nf);
        out->f_coeffs = cs_mul(out->G, inv, nf);
      }
      break;
    } catch (const std::range_error&) {
      if (attempt == 3) throw;
    }
  }
  // store at bits + 32 so evaluation does not drag the build precision along
  PrecisionScope store(bits + 32);
  out->G = round_cs(out->G);
  out->Psi = round_cs(out->Psi);
  out->f_coeffs = round_cs(out->f_coeffs);
  out->tau = Complex(rounded(out->tau.re), rounded(out->tau.im));
  return out;
}

// --------------------------------------------------------- class iteration

struct ClassRootsCache {
  std::mutex mu;
  // (disc, class key) -> per a: roots b in [0, 2a) belonging to the class
  std::map<std::tuple<Int, Int, Int, Int>, std::vector<std::vector<Int>>> data;
} roots_cache;

const std::vector<std::vector<Int>>& class_roots(const FormClass& P, Int X) {
  const QForm key = P.reduced;
  auto k = std::make_tuple(P.disc(), key.a, key.b, key.c);
  std::lock_guard<std::mutex> lk(roots_cache.mu);
  auto& v = roots_cache.data[k];
  if (static_cast<Int>(v.size()) > X) return v;
  ClassIndex idx(P.disc());
  int target = idx.index_of_class(P);
  Int D = P.disc();
  Int start = static_cast<Int>(v.size());
  if (start == 0) {
    v.emplace_back();  // a = 0 unused
    start = 1;
  }
  for (Int a = start; a <= X; ++a) {
    std::vector<Int> bs;
    for (Int b : sqrt_mod_4a(D, a)) {
      QForm q = QForm::unchecked(a, b, (b * b - D) / (4 * a));
      if (idx.find(q) == target) bs.push_back(b);
    }
    v.push_back(std::move(bs));
  }
  return v;
}

Int default_cutoff(int k) {
  if (k <= 1) return 4000;
  if (k == 2) return 20000;
  double X = std::pow(10.0, 24.0 / (k - 1));
  return static_cast<Int>(std::clamp(X, 200.0, 20000.0));
}

}  // namespace

// ------------------------------------------------------------ Fourier route

Complex exp_sum(const FormClass& P, Int a, Int n) {
  const auto& roots = class_roots(P, a);
  Complex s(0);
  for (Int b : roots[a]) s += e2pii(Real(n * b % (2 * a)) / Real(2 * a));
  return s;
}

Complex fourier_coeff_fkP(const FormClass& P, int k, Int n, const Precision& prec, Int a_cutoff) {
  PrecisionScope scope(prec);
  if (P.level != 1) throw UnsupportedDiscriminant("fourier_coeff_fkP: level 1 only");
  Int X = a_cutoff > 0 ? a_cutoff : default_cutoff(k);
  const auto& roots = class_roots(P, X);
  Real d_abs = Real(-P.disc());
  Real sd = sqrt(d_abs);
  Complex sum(0);
  for (Int a = 1; a <= X; ++a) {
    if (roots[a].empty()) continue;
    Complex s(0);
    for (Int b : roots[a]) s += e2pii(Real((n * b) % (2 * a)) / Real(2 * a));
    Real I = bessel_i_half(k, pi() * Real(n) * sd / Real(a));
    sum += s * (I / sqrt(Real(a)));
  }
  Real pre = pow(Real(2), k) * sqrt(Real(2)) * pow(pi(), k) / factorial(k - 1) * pow(d_abs, Real(k) / 2 - Real(1) / 4) *
             pow(Real(n), Real(k) - Real(1) / 2);
  if (k % 2) pre = -pre;
  Complex c = sum * pre;
  if (k == 1) c += Complex(Real(12) / Real(stabilizer_order(P.representative, 1)) * Real(sigma(n)));
  return c;
}

Complex fourier_coeff_algebraic(const FormClass& P, int k, Int n, const Precision& prec) {
  PrecisionScope scope(prec);
  auto a = algebraic(P.representative, k, prec.bits);
  if (n < 0 || n >= static_cast<Int>(a->f_coeffs.size())) throw std::out_of_range("fourier_coeff_algebraic: n");
  return Complex(rounded(a->f_coeffs[n].re), rounded(a->f_coeffs[n].im));
}

Complex eval_fkP_fourier(const FormClass& P, int k, const Complex& z, const Precision& prec, const RouteOptions& o) {
  PrecisionScope scope(prec);
  Real d_abs = Real(-P.disc());
  Real gap = z.im - sqrt(d_abs) / 2;
  if (!(gap > Real("0.05"))) throw std::domain_error("eval_fkP_fourier: Im z must exceed sqrt|d|/2; use the direct sum");
  Int X = o.a_cutoff > 0 ? o.a_cutoff : default_cutoff(k);
  const auto& roots = class_roots(P, X);
  Real sd = sqrt(d_abs);
  long nmax = static_cast<long>(std::ceil((prec.bits * std::log(2.0) + 20) / (2 * M_PI * gap.convert_to<double>()))) + 5;
  std::vector<Complex> c(nmax + 1, Complex(0));
  for (Int a = 1; a <= X; ++a) {
    if (roots[a].empty()) continue;
    Real ra = 1 / sqrt(Real(a));
    for (long n = 1; n <= nmax; ++n) {
      Complex s(0);
      for (Int b : roots[a]) s += e2pii(Real((n * b) % (2 * a)) / Real(2 * a));
      c[n] += s * (bessel_i_half(k, pi() * Real(n) * sd / Real(a)) * ra);
    }
  }
  Real pre0 = pow(Real(2), k) * sqrt(Real(2)) * pow(pi(), k) / factorial(k - 1) * pow(d_abs, Real(k) / 2 - Real(1) / 4);
  if (k % 2) pre0 = -pre0;
  Complex q = e2pii(z.re) * exp(-2 * pi() * z.im);
  Complex qn(1), sum(0);
  int stab = stabilizer_order(P.representative, 1);
  if (k == 1) sum = Complex(Real(-2) / stab);
  for (long n = 1; n <= nmax; ++n) {
    qn *= q;
    Complex cn = c[n] * (pre0 * pow(Real(n), Real(k) - Real(1) / 2));
    if (k == 1) cn += Complex(Real(12) / stab * Real(sigma(n)));
    sum += cn * qn;
  }
  return sum;
}

// --------------------------------------------------------- direct class sum

namespace {

// sum_n (x + n)^{-j} for j = 1..k as polynomials in cot(pi x)
std::vector<Complex> cot_sums(const Complex& x, int k) {
  Complex c = cot(pi() * x);
  // poly coefficients in c for d^m/dx^m cot(pi x), times pi^m
  std::vector<std::vector<Real>> polys;
  polys.push_back({Real(0), Real(1)});  // cot
  for (int m = 1; m < k; ++m) {
    const auto& p = polys.back();
    std::vector<Real> q(p.size() + 1, Real(0));
    // d/dx p(c) = p'(c) * (-pi (1 + c^2)); pi factor tracked separately
    for (std::size_t e = 1; e < p.size(); ++e) {
      Real de = p[e] * Real(static_cast<long>(e));
      q[e - 1] -= de;
      q[e + 1] -= de;
    }
    polys.push_back(q);
  }
  std::vector<Complex> out(k + 1);
  Real pp = pi();
  Real fact = 1;
  for (int j = 1; j <= k; ++j) {
    const auto& p = polys[j - 1];
    Complex v(0), cp(1);
    for (std::size_t e = 0; e < p.size(); ++e) {
      if (e > 0) cp *= c;
      if (p[e] != 0) v += cp * p[e];
    }
    // S_j = (-1)^{j-1}/(j-1)! * pi^j * poly
    if (j > 1) fact *= (j - 1);
    Complex s = v * (pow(pp, j) / fact);
    out[j] = ((j - 1) % 2) ? -s : s;
  }
  return out;
}

}  // namespace

Complex eval_fkP_directsum(const FormClass& P, int k, const Complex& z, const Precision& prec, const RouteOptions& o) {
  if (k < 2) throw std::domain_error("eval_fkP_directsum: k >= 2");
  PrecisionScope scope(prec);
  FDReduction red = reduce_to_fd(z);
  const Complex& w = red.z;
  Int X = o.a_cutoff > 0 ? o.a_cutoff : default_cutoff(k);
  const auto& roots = class_roots(P, X);
  Int D = P.disc();
  Real sd = sqrt(Real(-D));
  Complex total(0);
  // partial fraction weights: A_j = C(-k, k-j) delta^{-(2k-j)}, B_j = C(-k,k-j) (-delta)^{-(2k-j)}
  for (Int a = 1; a <= X; ++a) {
    if (roots[a].empty()) continue;
    Complex delta(Real(0), sd / Real(a));
    for (Int b : roots[a]) {
      Complex r(Real(-b) / Real(2 * a), sd / Real(2 * a));
      Complex rb = conj(r);
      if (abs(w - r) < Real("1e-8")) throw PoleProximityError("eval_fkP_directsum: at a pole");
      auto s1 = cot_sums(w - r, k);
      auto s2 = cot_sums(w - rb, k);
      Complex t(0);
      Real bin = 1;
      for (int j = k; j >= 1; --j) {
        int m = k - j;
        if (m > 0) bin = bin * (k + m - 1) / m;
        Real cb = (m % 2) ? Real(-bin) : bin;
        Complex Aj = pow(delta, -(2 * k - j)) * cb;
        Complex Bj = pow(-delta, -(2 * k - j)) * cb;
        t += Aj * s1[j] + Bj * s2[j];
      }
      total += t * pow(Real(a), -k);
    }
  }
  Complex val = total * (pow(sd, 2 * k - 1) / pi());
  return val / pow(red.gamma.j(z), 2 * k);
}

// ------------------------------------------------------------- dispatcher

Complex eval_fkP(const FormClass& P, int k, const Complex& z, const Precision& prec) {
  PrecisionScope scope(prec);
  if (P.level != 1) {
    throw UnsupportedDiscriminant("eval_fkP: level > 1 forms use f_kP (direct class sum)");
  }
  auto alg = algebraic(P.representative, k, prec.bits);
  FDReduction red = reduce_to_fd(z);
  Complex v = alg->eval_reduced(red.z);
  return Complex(rounded(v.re), rounded(v.im)) / pow(red.gamma.j(z), 2 * k);
}

namespace {

// level N: direct sum over Gamma0(N)-class members (finite cutoff), used only
// for small experiments
Complex eval_level_N(const FormClass& P, int k, const Complex& z, Int X) {
  Int D = P.disc();
  Complex total(0);
  Real sd = sqrt(Real(-D));
  for (Int a = P.level; a <= X; a += P.level) {
    for (Int b : sqrt_mod_4a(D, a)) {
      QForm q = QForm::unchecked(a, b, (b * b - D) / (4 * a), P.level);
      if (!P.contains(q)) continue;
      // members [a, b + 2an, ...] for all n: cot partial fractions
      Complex r(Real(-b) / Real(2 * a), sd / Real(2 * a));
      Complex delta(Real(0), sd / Real(a));
      auto s1 = cot_sums(z - r, k);
      auto s2 = cot_sums(z - conj(r), k);
      Real bin = 1;
      Complex t(0);
      for (int j = k; j >= 1; --j) {
        int m = k - j;
        if (m > 0) bin = bin * (k + m - 1) / m;
        Real cb = (m % 2) ? Real(-bin) : bin;
        t += pow(delta, -(2 * k - j)) * cb * s1[j] + pow(-delta, -(2 * k - j)) * cb * s2[j];
      }
      total += t * pow(Real(a), -k);
    }
  }
  return total * (pow(sd, 2 * k - 1) / pi());
}

}  // namespace

ModularFunction f_kP(const FormClass& P, int k, const Precision& prec) {
  ModularFunction f;
  f.weight = 2 * k;
  f.level = P.level;
  f.tag = "f_{" + std::to_string(k) + "," + P.representative.str() + "}";
  f.poles.push_back(PoleSpec{P, 1, {Mat2::identity()}});
  if (P.level == 1) {
    PrecisionScope scope(prec);
    auto alg = algebraic(P.representative, k, prec.bits);
    f.evaluator = [alg, k](const Complex& z) {
      FDReduction red = reduce_to_fd(z);
      Complex v = alg->eval_reduced(red.z);
      return Complex(rounded(v.re), rounded(v.im)) / pow(red.gamma.j(z), 2 * k);
    };
  } else {
    if (k < 2) throw UnsupportedDiscriminant("f_kP: k = 1 at level N > 1 is not supported");
    Int X = default_cutoff(k);
    f.evaluator = [P, k, X](const Complex& z) { return eval_level_N(P, k, z, X); };
  }
  return f;
}

ModularFunction f_kD(Int D, int k, const Precision& prec, Int N) {
  std::vector<std::pair<Complex, ModularFunction>> terms;
  for (const auto& c : enumerate_classes(D, N)) terms.emplace_back(Complex(1), f_kP(c, k, prec));
  ModularFunction f = combine(terms);
  f.tag = "f_{" + std::to_string(k) + "," + std::to_string(D) + "}";
  return f;
}

ModularFunction eisenstein_function(int k, const Precision& prec) {
  (void)prec;
  ModularFunction f = ModularFunction::from_qseries(eisenstein_2k_level1(k, 400), "E_" + std::to_string(2 * k));
  return f;
}

// ------------------------------------------------------------------ twists

ModularFunction twisted(Int Delta, Int delta, int k, const Precision& prec, Int N) {
  const bool keven = (k % 2 == 0);
  if ((keven ? Delta : -Delta) <= 0 || (keven ? delta : -delta) >= 0)
    throw std::domain_error("twisted: need (-1)^k Delta > 0 and (-1)^k delta < 0");
  if (!is_fundamental(delta)) throw std::domain_error("twisted: delta must be fundamental");
  std::vector<std::pair<Complex, ModularFunction>> terms;
  for (const auto& c : enumerate_classes(Delta * delta, N)) {
    int chi = genus_character(delta, c.representative);
    if (chi == 0) continue;
    terms.emplace_back(Complex(chi), f_kP(c, k, prec));
  }
  if (terms.empty()) return ModularFunction::zero(2 * k, N);
  ModularFunction f = combine(terms);
  f.tag = "f_{" + std::to_string(k) + "," + std::to_string(Delta) + "," + std::to_string(delta) + "}";
  return f;
}

Complex eval_twisted(Int Delta, Int delta, int k, const Complex& z, const Precision& prec, Int N) {
  PrecisionScope scope(prec);
  return twisted(Delta, delta, k, prec, N)(z);
}

// ------------------------------------------------------------------- Hecke

ModularFunction hecke_translate(const ModularFunction& f, const RelationVector& lambda) {
  for (const auto& p : f.poles)
    if (p.m != 1) throw std::invalid_argument("hecke_translate: nested translates are not supported");
  ModularFunction g;
  g.weight = f.weight;
  g.level = f.level;
  g.tag = f.tag + "|T_(" + lambda.str() + ")";
  struct Term {
    Real scale;
    std::vector<Mat2> reps;
  };
  auto ev = f.evaluator;
  const int w = f.weight;
  std::vector<std::pair<Int, BigInt>> ms;
  for (int m = 1; m <= lambda.support(); ++m)
    if (lambda.lambda[m] != 0) ms.emplace_back(m, lambda.lambda[m]);
  for (auto [m, l] : ms)
    for (const auto& p : f.poles) g.poles.push_back(PoleSpec{p.P, m, hecke_coset_reps(m, f.level)});
  const Int N = f.level;
  g.evaluator = [ev, w, ms, N](const Complex& z) {
    Complex total(0);
    for (auto [m, l] : ms) {
      Complex s(0);
      for (const auto& R : hecke_coset_reps(m, N)) {
        Complex mz = R.act(z);
        s += ev(mz) * pow(Real(R.d), -w);
      }
      total += s * (to_real(l) * pow(Real(m), w - 1));
    }
    return total;
  };
  return g;
}

Complex hecke_translate_eval(const ModularFunction& f, const RelationVector& lambda, const Complex& z) {
  return hecke_translate(f, lambda)(z);
}

Real modularity_residual(const ModularFunction& f, const Mat2& g, const Complex& z) {
  Complex a = f(g.act(z)) / pow(g.j(z), f.weight);
  Complex b = f(z);
  return abs(a - b);
}

}  // namespace bqf
