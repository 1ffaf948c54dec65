#include "bqf/modforms.hpp"

#include "bqf/quadrature.hpp"
#include "bqf/special.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bqf {

namespace bm = boost::multiprecision;

// ------------------------------------------------------------------ QSeries

QSeries QSeries::zero(int w, int M, Int N) { return QSeries(w, N, std::vector<Rational>(M + 1, Rational(0))); }

QSeries QSeries::one(int M) {
  QSeries s = zero(0, M);
  s.c[0] = 1;
  return s;
}

QSeries QSeries::truncated(int M) const {
  QSeries s = *this;
  if (M < this->M()) s.c.resize(M + 1);
  return s;
}

bool QSeries::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const Rational& x) { return x == 0; });
}

QSeries QSeries::operator+(const QSeries& o) const {
  int m = std::min(M(), o.M());
  QSeries s(weight, level, std::vector<Rational>(m + 1));
  for (int n = 0; n <= m; ++n) s.c[n] = c[n] + o.c[n];
  return s;
}

QSeries QSeries::operator-(const QSeries& o) const { return *this + o * Rational(-1); }

QSeries QSeries::operator*(const Rational& x) const {
  QSeries s = *this;
  for (auto& v : s.c) v *= x;
  return s;
}

static bool integral(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return bm::denominator(x) == 1; });
}

QSeries QSeries::operator*(const QSeries& o) const {
  int m = std::min(M(), o.M());
  QSeries s(weight + o.weight, std::max(level, o.level), std::vector<Rational>(m + 1));
  if (integral(c) && integral(o.c)) {
    // integer convolution is several times faster than mpq
    std::vector<BigInt> x(m + 1), y(m + 1), z(m + 1);
    for (int n = 0; n <= m; ++n) {
      x[n] = bm::numerator(c[n]);
      y[n] = bm::numerator(o.c[n]);
    }
    for (int i = 0; i <= m; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; i + j <= m; ++j) z[i + j] += x[i] * y[j];
    }
    for (int n = 0; n <= m; ++n) s.c[n] = Rational(z[n]);
    return s;
  }
  for (int i = 0; i <= m; ++i) {
    if (c[i] == 0) continue;
    for (int j = 0; i + j <= m; ++j) s.c[i + j] += c[i] * o.c[j];
  }
  return s;
}

QSeries qpow(const QSeries& f, int e) {
  QSeries r = QSeries::one(f.M());
  QSeries b = f;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

// ----------------------------------------------------------- arithmetic bits

Int sigma(Int n, int power) {
  Int s = 0;
  for (Int d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    Int e = n / d;
    Int pd = 1, pe = 1;
    for (int i = 0; i < power; ++i) {
      pd *= d;
      pe *= e;
    }
    s += pd;
    if (e != d) s += pe;
  }
  return s;
}

static BigInt sigma_big(Int n, int power) {
  BigInt s = 0;
  for (Int d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    Int e = n / d;
    s += bm::pow(BigInt(d), power);
    if (e != d) s += bm::pow(BigInt(e), power);
  }
  return s;
}

Int mobius(Int n) {
  int m = 1;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    m = -m;
  }
  return n > 1 ? -m : m;
}

Rational bernoulli(int n) {
  static std::mutex mu;
  static std::vector<Rational> B{Rational(1)};
  std::lock_guard<std::mutex> lk(mu);
  while (static_cast<int>(B.size()) <= n) {
    int m = static_cast<int>(B.size());
    Rational s = 0;
    BigInt binom = 1;  // C(m+1, j)
    for (int j = 0; j < m; ++j) {
      s += Rational(binom) * B[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    B.push_back(-s / Rational(m + 1));
  }
  return B[n];
}

// ------------------------------------------------------------ basic series

namespace {
std::mutex base_mu;
std::map<std::pair<int, int>, QSeries> base_cache;  // (kind, M)

QSeries cached(int kind, int M, const std::function<QSeries()>& make) {
  {
    std::lock_guard<std::mutex> lk(base_mu);
    auto it = base_cache.lower_bound({kind, M});
    if (it != base_cache.end() && it->first.first == kind) return it->second.truncated(M);
  }
  QSeries s = make();
  std::lock_guard<std::mutex> lk(base_mu);
  base_cache[{kind, M}] = s;
  return s;
}
}  // namespace

QSeries delta_coeffs(int M) {
  return cached(-1, M, [M] {
    // q prod (1-q^n)^24: first prod (1-q^n) via pentagonal numbers, then 24th power
    std::vector<Rational> eta(M + 1, Rational(0));
    eta[0] = 1;
    for (Int k = 1; k * (3 * k - 1) / 2 <= M; ++k) {
      Rational sg = (k % 2 == 0) ? 1 : -1;
      eta[k * (3 * k - 1) / 2] = sg;
      if (k * (3 * k + 1) / 2 <= M) eta[k * (3 * k + 1) / 2] = sg;
    }
    QSeries e(0, 1, eta);
    QSeries p = qpow(e, 24);
    QSeries d = QSeries::zero(12, M);
    for (int n = 1; n <= M; ++n) d.c[n] = p.c[n - 1];
    return d;
  });
}

QSeries eisenstein_2k_level1(int k, int M) {
  if (k < 2) throw std::domain_error("eisenstein_2k_level1: k >= 2");
  return cached(k, M, [k, M] {
    QSeries e = QSeries::zero(2 * k, M);
    e.c[0] = 1;
    Rational f = Rational(-4 * k) / bernoulli(2 * k);
    for (int n = 1; n <= M; ++n) e.c[n] = f * Rational(sigma_big(n, 2 * k - 1));
    return e;
  });
}

E2Star e2_star_level(Int N, int M) {
  E2Star out;
  Rational pre = 1;
  Rational index = N;
  for (Int p = 2, n = N; n > 1; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    pre /= (1 - Rational(1, p * p));
    index *= Rational(p + 1, p);
  }
  out.holomorphic = QSeries::zero(2, M, N);
  out.holomorphic.c[0] = 1;
  for (int n = 1; n <= M; ++n) {
    Rational s = 0;
    for (Int d = 1; d <= N; ++d) {
      if (N % d || mobius(d) == 0) continue;
      if ((d * n) % N) continue;  // sigma of a non-integer is 0
      s += Rational(mobius(d), d * d) * Rational(sigma(d * n / N));
    }
    out.holomorphic.c[n] = -24 * pre * s;
  }
  out.nonhol_coeff = Rational(3) / index;
  return out;
}

// ------------------------------------------------------------- dimensions

int modular_dim(int w) {
  if (w < 0 || w % 2) return 0;
  if (w == 2) return 0;
  return (w % 12 == 2) ? w / 12 : w / 12 + 1;
}

int cusp_dim(int k) {
  int w = 2 * k;
  if (w < 12) return 0;
  return modular_dim(w) - 1;
}

std::vector<QSeries> monomial_basis(int weight, int M, bool cusp_only) {
  std::vector<QSeries> out;
  QSeries E4 = eisenstein_2k_level1(2, M), E6 = eisenstein_2k_level1(3, M), D = delta_coeffs(M);
  for (int c = cusp_only ? 1 : 0; 12 * c <= weight; ++c) {
    int rem = weight - 12 * c;
    if (rem == 2) continue;
    int a, b;
    if (rem % 4 == 0) {
      a = rem / 4;
      b = 0;
    } else {
      a = (rem - 6) / 4;
      b = 1;
    }
    QSeries m = qpow(D, c) * qpow(E4, a);
    if (b) m = m * E6;
    m.weight = weight;
    out.push_back(m);
  }
  return out;
}

std::vector<QSeries> cusp_basis(int k, Int N, int M) {
  if (N != 1) throw UnsupportedDiscriminant("cusp_basis: exact bases only at level 1");
  return monomial_basis(2 * k, M, true);
}

// -------------------------------------------------------------- relations

int RelationVector::support() const {
  for (int m = static_cast<int>(lambda.size()) - 1; m >= 1; --m)
    if (lambda[m] != 0) return m;
  return 0;
}

std::string RelationVector::str() const {
  std::ostringstream os;
  for (int m = 1; m <= support(); ++m) os << (m > 1 ? "," : "") << lambda[m];
  return os.str();
}

RelationVector RelationVector::parse(const std::string& s, int k, Int N) {
  RelationVector r;
  r.k = k;
  r.level = N;
  r.lambda.push_back(0);
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) r.lambda.emplace_back(tok);
  if (r.lambda.size() < 2) throw std::invalid_argument("empty relation vector");
  return r;
}

std::vector<RelationVector> find_relations(int k, Int N, int B) {
  std::vector<int> cols;
  for (int m = 1; m <= B; ++m)
    if (std::gcd<Int, Int>(m, N) == 1) cols.push_back(m);
  auto basis = cusp_basis(k, N, B);
  const int rows = static_cast<int>(basis.size()), nc = static_cast<int>(cols.size());
  std::vector<RelationVector> out;
  if (nc < rows + 1) return out;
  std::vector<std::vector<Rational>> A(rows, std::vector<Rational>(nc));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < nc; ++j) A[i][j] = basis[i].coeff(cols[j]);
  // reduced row echelon form
  std::vector<int> pivot_col;
  int r = 0;
  for (int j = 0; j < nc && r < rows; ++j) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (A[i][j] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(A[p], A[r]);
    Rational inv = 1 / A[r][j];
    for (auto& x : A[r]) x *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || A[i][j] == 0) continue;
      Rational f = A[i][j];
      for (int t = 0; t < nc; ++t) A[i][t] -= f * A[r][t];
    }
    pivot_col.push_back(j);
    ++r;
  }
  for (int j = 0; j < nc; ++j) {
    if (std::find(pivot_col.begin(), pivot_col.end(), j) != pivot_col.end()) continue;
    std::vector<Rational> v(nc, Rational(0));
    v[j] = 1;
    for (int i = 0; i < r; ++i) v[pivot_col[i]] = -A[i][j];
    BigInt den = 1;
    for (auto& x : v) den = bm::lcm(den, BigInt(bm::denominator(x)));
    RelationVector rv;
    rv.k = k;
    rv.level = N;
    rv.lambda.assign(B + 1, BigInt(0));
    BigInt g = 0;
    for (int t = 0; t < nc; ++t) {
      rv.lambda[cols[t]] = bm::numerator(v[t] * Rational(den));
      g = bm::gcd(g, rv.lambda[cols[t]]);
    }
    if (g > 1)
      for (auto& x : rv.lambda) x /= g;
    out.push_back(rv);
  }
  return out;
}

bool is_relation(const RelationVector& r, int M) {
  for (const auto& f : cusp_basis(r.k, r.level, std::max(M, r.support()))) {
    Rational s = 0;
    for (int m = 1; m <= r.support(); ++m) s += Rational(r.lambda[m]) * f.coeff(m);
    if (s != 0) return false;
  }
  return true;
}

// ------------------------------------------------------------------- Hecke

std::vector<Mat2> hecke_coset_reps(Int m, Int N) {
  if (m < 1 || std::gcd(m, N) != 1) throw std::domain_error("hecke_coset_reps: (m, N) = 1 required");
  std::vector<Mat2> out;
  for (Int dl = 1; dl <= m; ++dl) {
    if (m % dl) continue;
    Int al = m / dl;
    for (Int b = 0; b < dl; ++b) out.push_back({al, b, 0, dl});
  }
  return out;
}

QSeries hecke_on_qseries(const QSeries& f, Int m) {
  int M = static_cast<int>(f.M() / m);
  int w = f.weight;
  QSeries g = QSeries::zero(w, M, f.level);
  for (int n = 0; n <= M; ++n) {
    Rational s = 0;
    Int g0 = std::gcd<Int, Int>(m, n == 0 ? m : n);
    for (Int d = 1; d <= g0; ++d) {
      if (m % d || (n % d) || std::gcd(d, f.level) != 1) continue;
      s += Rational(bm::pow(BigInt(d), w - 1)) * f.c[static_cast<std::size_t>(m * n / (d * d))];
    }
    g.c[n] = s;
  }
  return g;
}

// -------------------------------------------------------------- evaluation

const std::vector<Real>& SeriesEvaluator::coeffs() const {
  unsigned bits = current_bits();
  std::lock_guard<std::mutex> lk(mu_);
  auto it = cache_.find(bits);
  if (it != cache_.end()) return it->second;
  std::vector<Real> v;
  v.reserve(f_.c.size());
  for (const auto& x : f_.c) v.push_back(to_real(x));
  return cache_.emplace(bits, std::move(v)).first->second;
}

Complex SeriesEvaluator::eval(const Complex& z, int deriv) const {
  const auto& a = coeffs();
  Complex q = e2pii(z.re) * exp(-2 * pi() * z.im);
  Real aq = abs(q);
  Complex qn(1);
  Complex sum(0);
  Real tp = 2 * pi();
  Real last(0);
  for (int n = 0; n < static_cast<int>(a.size()); ++n) {
    if (n > 0) qn *= q;
    if (a[n] == 0) continue;
    Complex t = qn * a[n];
    if (deriv > 0) {
      Complex f = pow(Complex(Real(0), Real(tp * n)), deriv);
      t = t * f;
    }
    sum += t;
    last = abs(t);
  }
  // remaining terms: geometric estimate from the last term
  Real tail = last * aq / (1 - aq) * 4;
  Real tol = eps_rel() * 65536 * max(Real(1), abs(sum));
  if (tail > tol) throw std::range_error("SeriesEvaluator: q-expansion truncated too early");
  return sum;
}

std::vector<Complex> SeriesEvaluator::taylor(const Complex& z, int order) const {
  std::vector<Complex> t;
  Real fact = 1;
  for (int j = 0; j <= order; ++j) {
    if (j > 0) fact *= j;
    t.push_back(eval(z, j) / fact);
  }
  return t;
}

Complex eval_qseries(const QSeries& f, const Complex& z) { return SeriesEvaluator(f).eval(z); }

Complex eichler_holomorphic(const QSeries& f, const Complex& tau, const Precision& prec) {
  PrecisionScope s(prec);
  int w = f.weight;
  QSeries g = f;
  for (int n = 1; n <= g.M(); ++n) g.c[n] /= Rational(bm::pow(BigInt(n), w - 1));
  g.c[0] = 0;
  return SeriesEvaluator(g).eval(tau);
}

Complex eichler_nonholomorphic(const QSeries& f, const Complex& tau, const Precision& prec) {
  PrecisionScope s(prec);
  int w = f.weight;  // 2k
  int sdeg = w - 1;  // Gamma(2k-1, .)
  Real v = tau.im;
  Real fourpi = 4 * pi();
  Complex sum(0);
  Real last(0);
  for (int n = 1; n <= f.M(); ++n) {
    if (f.c[n] == 0) continue;
    Real x = fourpi * n * v;
    // Gamma(s, x) e^{x} = (s-1)! sum_{j<s} x^j/j!
    Real poly = 0, term = 1;
    for (int j = 0; j < sdeg; ++j) {
      if (j > 0) term *= x / j;
      poly += term;
    }
    poly *= factorial(sdeg - 1);
    // e^{-x} q^{-n} = e^{-2 pi n v} e^{-2 pi i n u}
    Complex ph = e2pii(-Real(n) * tau.re) * exp(-2 * pi() * n * v);
    Complex t = ph * (to_real(f.c[n]) * pow(Real(n), 1 - w) * poly);
    sum += t;
    last = abs(t);
  }
  Real aq = exp(-2 * pi() * v);
  if (last * aq / (1 - aq) * 4 > eps_rel() * 65536 * max(Real(1), abs(sum)))
    throw std::range_error("eichler_nonholomorphic: truncated too early");
  return sum * (-pow(fourpi, 1 - w));
}

Complex eichler_nonholomorphic_quadrature(const QSeries& f, const Complex& tau, const Precision& prec) {
  PrecisionScope s(prec);
  int w = f.weight;
  SeriesEvaluator ev(f);
  Real v = tau.im;
  Complex base(-tau.re, v);  // -conj(tau)
  // integrand decays like e^{-2 pi t}; cut where it is below target
  Real T = Real(prec.bits) * log(Real(2)) / (2 * pi()) + 10;
  auto integrand = [&](const Real& t) {
    Complex z = base + Complex(Real(0), t);
    Complex mz(-z.re, z.im);  // -conj(z)
    Complex fv = conj(ev.eval(mz));
    Complex zt = z + tau;
    return fv * pow(zt, w - 2) * Complex::i();
  };
  QuadratureOptions o;
  o.breakpoints = {Real(1), Real(3)};
  auto r = gauss_legendre(integrand, Real(0), T, prec, o);
  Complex c = pow(Complex(Real(0), Real(-2)), 1 - w);
  return c * r.value;
}

}  // namespace bqf
