#include "bqf/qforms.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bqf {

namespace bm = boost::multiprecision;

// ---------------------------------------------------------------- matrices

Mat2 Mat2::operator*(const Mat2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Mat2 Mat2::inverse() const {
  Int dt = det();
  if (dt == 1) return {d, -b, -c, a};
  if (dt == -1) return {-d, b, c, -a};
  throw std::domain_error("Mat2::inverse: determinant is not +-1");
}

Complex Mat2::act(const Complex& z) const {
  Complex num = z * Real(a) + Complex(Real(b));
  Complex den = z * Real(c) + Complex(Real(d));
  return num / den;
}

Complex Mat2::j(const Complex& z) const { return z * Real(c) + Complex(Real(d)); }

std::string Mat2::str() const {
  std::ostringstream os;
  os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
  return os.str();
}

Mat2 mat_pow(const Mat2& m, long n) {
  if (n < 0) return mat_pow(m.inverse(), -n);
  Mat2 r = Mat2::identity(), base = m;
  while (n > 0) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return r;
}

// ------------------------------------------------------------- integer bits

bool is_square(Int n) {
  if (n < 0) return false;
  Int r = isqrt(n);
  return r * r == n;
}

Int isqrt(Int n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  Int r = static_cast<Int>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

Int gcd3(Int a, Int b, Int c) { return std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::llabs(c)); }

static Int floor_mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

static Int floor_div(Int a, Int m) {
  Int q = a / m;
  if ((a % m != 0) && ((a < 0) != (m < 0))) --q;
  return q;
}

// -------------------------------------------------------------------- forms

QForm::QForm(Int a_, Int b_, Int c_, Int N) : a(a_), b(b_), c(c_), level(N) {
  if (N < 1) throw std::invalid_argument("QForm: level must be positive");
  Int D = disc();
  if (D == 0) throw std::invalid_argument("QForm: zero discriminant");
  if (a % N != 0) throw std::invalid_argument("QForm: level must divide a");
  if (D < 0 && a <= 0) throw std::invalid_argument("QForm: definite forms must have a > 0");
}

QForm QForm::unchecked(Int a_, Int b_, Int c_, Int N) {
  QForm q;
  q.a = a_;
  q.b = b_;
  q.c = c_;
  q.level = N;
  return q;
}

QForm QForm::parse(const std::string& s, Int N) {
  std::vector<Int> v;
  std::string tok;
  std::istringstream is(s);
  while (std::getline(is, tok, ',')) {
    std::size_t pos = 0;
    // trim
    auto b = tok.find_first_not_of(" []");
    auto e = tok.find_last_not_of(" []");
    if (b == std::string::npos) throw std::invalid_argument("bad form: " + s);
    tok = tok.substr(b, e - b + 1);
    long long x = std::stoll(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("bad form: " + s);
    v.push_back(x);
  }
  if (v.size() != 3) throw std::invalid_argument("bad form: " + s);
  return QForm(v[0], v[1], v[2], N);
}

Int QForm::content() const { return gcd3(a, b, c); }

QForm QForm::apply(const Mat2& g) const {
  const Int p = g.a, q = g.b, r = g.c, s = g.d;
  Int na = a * p * p + b * p * r + c * r * r;
  Int nb = 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s;
  Int nc = a * q * q + b * q * s + c * s * s;
  return unchecked(na, nb, nc, level);
}

Complex QForm::eval(const Complex& z) const {
  return (z * Real(a) + Complex(Real(b))) * z + Complex(Real(c));
}

bool QForm::operator<(const QForm& o) const {
  if (a != o.a) return a < o.a;
  if (b != o.b) return b < o.b;
  return c < o.c;
}

std::string QForm::str() const {
  std::ostringstream os;
  os << "[" << a << "," << b << "," << c << "]";
  return os.str();
}

Int discriminant(const QForm& q) { return q.disc(); }

// ---------------------------------------------------------------- reduction

bool is_reduced(const QForm& q) {
  Int D = q.disc();
  if (D < 0) {
    if (std::llabs(q.b) > q.a || q.a > q.c) return false;
    if ((std::llabs(q.b) == q.a || q.a == q.c) && q.b < 0) return false;
    return true;
  }
  // 0 < b < sqrt D, sqrt D - b < 2|a| < sqrt D + b
  Int b = q.b, A = std::llabs(q.a);
  if (b <= 0 || b * b >= D) return false;
  Int lo = 2 * A + b;
  if (lo * lo <= D) return false;
  Int hi = 2 * A - b;
  if (hi >= 0 && hi * hi >= D) return false;
  return true;
}

Mat2 rho_matrix(const QForm& q) {
  Int D = q.disc();
  Int c = q.c;
  Int m = 2 * std::llabs(c);
  Int nb;
  if (c * c > D) {
    nb = floor_mod(-q.b, m);
    if (nb > std::llabs(c)) nb -= m;
  } else {
    Int s = isqrt(D);
    nb = s - floor_mod(s + q.b, m);
  }
  Int t = (nb + q.b) / (2 * c);
  return {0, -1, 1, t};
}

static Reduction reduce_definite(const QForm& q0) {
  QForm q = q0;
  Mat2 W = Mat2::identity();
  const Mat2 S{0, -1, 1, 0};
  for (int guard = 0; guard < 10000; ++guard) {
    // b into (-a, a]
    Int t = floor_div(q.a - q.b, 2 * q.a);
    if (t != 0) {
      Mat2 T{1, t, 0, 1};
      q = q.apply(T);
      W = W * T;
    }
    if (q.a > q.c) {
      q = q.apply(S);
      W = W * S;
      continue;
    }
    if (q.a == q.c && q.b < 0) {
      q = q.apply(S);
      W = W * S;
    }
    return {q, W};
  }
  throw std::logic_error("reduce_definite did not terminate");
}

static Reduction reduce_indefinite(const QForm& q0) {
  if (is_square(q0.disc())) throw UnsupportedDiscriminant("square discriminant");
  QForm q = q0;
  Mat2 W = Mat2::identity();
  for (int guard = 0; guard < 100000; ++guard) {
    if (is_reduced(q)) return {q, W};
    Mat2 R = rho_matrix(q);
    q = q.apply(R);
    W = W * R;
  }
  throw std::logic_error("reduce_indefinite did not terminate");
}

Reduction reduce_with_witness(const QForm& q) {
  if (q.disc() == 0) throw UnsupportedDiscriminant("zero discriminant");
  return q.disc() < 0 ? reduce_definite(q) : reduce_indefinite(q);
}

QForm reduce(const QForm& q) { return reduce_with_witness(q).form; }

std::vector<QForm> reduced_cycle(const QForm& r) {
  std::vector<QForm> out{r};
  QForm q = r;
  for (int guard = 0; guard < 1000000; ++guard) {
    q = q.apply(rho_matrix(q));
    if (q == r) return out;
    out.push_back(q);
  }
  throw std::logic_error("reduced_cycle did not close");
}

// ------------------------------------------------------------- equivalence

static std::optional<Mat2> level1_witness(const QForm& q1, const QForm& q2) {
  if (q1.disc() != q2.disc()) return std::nullopt;
  Reduction r1 = reduce_with_witness(q1);
  Reduction r2 = reduce_with_witness(q2);
  if (q1.disc() < 0) {
    if (!(r1.form == r2.form)) return std::nullopt;
    return r1.witness * r2.witness.inverse();
  }
  QForm q = r1.form;
  Mat2 H = Mat2::identity();
  for (int guard = 0; guard < 1000000; ++guard) {
    if (q == r2.form) return r1.witness * H * r2.witness.inverse();
    Mat2 R = rho_matrix(q);
    q = q.apply(R);
    H = H * R;
    if (q == r1.form) break;
  }
  return std::nullopt;
}

std::vector<Mat2> stabilizer(const QForm& P) {
  if (P.disc() >= 0) throw std::domain_error("stabilizer: definite forms only");
  Reduction r = reduce_with_witness(P);
  std::vector<Mat2> out;
  for (Int a = -2; a <= 2; ++a)
    for (Int b = -2; b <= 2; ++b)
      for (Int c = -2; c <= 2; ++c)
        for (Int d = -2; d <= 2; ++d) {
          Mat2 g{a, b, c, d};
          if (g.det() != 1) continue;
          if (r.form.apply(g) == r.form) {
            out.push_back(r.witness * g * r.witness.inverse());
          }
        }
  return out;
}

EquivalenceResult equivalent(const QForm& q1, const QForm& q2, Int N) {
  EquivalenceResult res;
  auto w = level1_witness(q1, q2);
  if (!w) {
    res.status = Equivalence::inequivalent;
    return res;
  }
  if (N == 1) {
    res.status = Equivalence::equivalent;
    res.witness = *w;
    return res;
  }
  if (q1.a % N != 0 || q2.a % N != 0) {
    res.status = Equivalence::inequivalent;
    return res;
  }
  if (q1.disc() < 0) {
    for (const auto& s : stabilizer(q1)) {
      Mat2 g = s * *w;
      if (g.c % N == 0) {
        res.status = Equivalence::equivalent;
        res.witness = g;
        return res;
      }
    }
    res.status = Equivalence::inequivalent;
    return res;
  }
  // indefinite: witnesses are +-M^n w; scan one period of M mod N
  Mat2 M = automorph(q1, 1);
  Mat2 Mn = Mat2::identity();
  Mat2 Mmod = Mat2::identity();
  const Int bound = 6 * N * N * N + 6;
  auto mod = [&](Int x) { return floor_mod(x, N); };
  for (Int n = 0; n < bound; ++n) {
    Mat2 gm = Mmod * Mat2{mod(w->a), mod(w->b), mod(w->c), mod(w->d)};
    if (mod(gm.c) == 0) {
      res.status = Equivalence::equivalent;
      // exact witness only if it stays within 64 bits
      bool ok = true;
      Mat2 P = Mat2::identity();
      for (Int i = 0; i < n && ok; ++i) {
        __int128 e[4] = {(__int128)P.a * M.a + (__int128)P.b * M.c, (__int128)P.a * M.b + (__int128)P.b * M.d,
                         (__int128)P.c * M.a + (__int128)P.d * M.c, (__int128)P.c * M.b + (__int128)P.d * M.d};
        for (auto x : e)
          if (x > (__int128)1e15 || x < -(__int128)1e15) ok = false;
        if (ok) P = {(Int)e[0], (Int)e[1], (Int)e[2], (Int)e[3]};
      }
      if (ok) res.witness = P * *w;
      return res;
    }
    Mn = Mat2::identity();
    Mmod = Mmod * M;
    Mmod = {mod(Mmod.a), mod(Mmod.b), mod(Mmod.c), mod(Mmod.d)};
    if (n > 0 && ((mod(Mmod.a) == 1 % N && Mmod.b == 0 && Mmod.c == 0 && mod(Mmod.d) == 1 % N))) break;
  }
  (void)Mn;
  res.status = Equivalence::inequivalent;
  return res;
}

// ------------------------------------------------------------------ classes

static QForm canonical_key(const QForm& q) {
  QForm r = reduce(q);
  if (r.disc() < 0) return r;
  auto cyc = reduced_cycle(r);
  return *std::min_element(cyc.begin(), cyc.end());
}

FormClass::FormClass(const QForm& rep) : FormClass(rep, rep.level) {}

FormClass::FormClass(const QForm& rep, Int N) : representative(rep), level(N) {
  representative.level = N;
  reduced = canonical_key(rep);
}

bool FormClass::contains(const QForm& q) const {
  if (q.disc() != representative.disc()) return false;
  if (level == 1) return canonical_key(q) == reduced;
  return equivalent(representative, q, level).status == Equivalence::equivalent;
}

FormClass FormClass::negated() const { return FormClass(representative.neg(), level); }

std::vector<QForm> FormClass::members(Int bound) const {
  std::vector<QForm> out;
  Int D = disc();
  for (Int a = -bound; a <= bound; ++a) {
    if (a == 0 || a % level != 0) continue;
    if (D < 0 && a < 0) continue;
    for (Int b = -bound; b <= bound; ++b) {
      Int num = b * b - D;
      if (num % (4 * a) != 0) continue;
      Int c = num / (4 * a);
      if (std::llabs(c) > bound) continue;
      QForm q = QForm::unchecked(a, b, c, level);
      if (contains(q)) out.push_back(q);
    }
  }
  return out;
}

std::vector<QForm> reduced_definite_forms(Int D) {
  std::vector<QForm> out;
  if (D >= 0) throw std::domain_error("reduced_definite_forms: D < 0 required");
  if (floor_mod(D, 4) != 0 && floor_mod(D, 4) != 1) return out;
  for (Int a = 1; 3 * a * a <= -D; ++a) {
    for (Int b = -a + 1; b <= a; ++b) {
      Int num = b * b - D;
      if (num % (4 * a) != 0) continue;
      Int c = num / (4 * a);
      if (c < a) continue;
      if ((b < 0) && (c == a)) continue;
      out.push_back(QForm::unchecked(a, b, c));
    }
  }
  return out;
}

static std::vector<QForm> reduced_indefinite_forms(Int D) {
  std::vector<QForm> out;
  Int s = isqrt(D);
  for (Int b = 1; b <= s; ++b) {
    if (floor_mod(b - D, 2) != 0) continue;
    Int num = b * b - D;  // = 4ac < 0
    for (Int a = -2 * s; a <= 2 * s; ++a) {
      if (a == 0 || num % (4 * a) != 0) continue;
      QForm q = QForm::unchecked(a, b, num / (4 * a));
      if (is_reduced(q)) out.push_back(q);
    }
  }
  return out;
}

std::vector<FormClass> enumerate_classes(Int D, Int N) {
  if (D == 0 || (D > 0 && is_square(D))) throw UnsupportedDiscriminant("square discriminant");
  if (floor_mod(D, 4) > 1) return {};
  std::vector<QForm> level1;
  if (D < 0) {
    level1 = reduced_definite_forms(D);
  } else {
    std::set<QForm> seen;
    for (const auto& r : reduced_indefinite_forms(D)) {
      if (seen.count(r)) continue;
      auto cyc = reduced_cycle(r);
      for (auto& f : cyc) seen.insert(f);
      level1.push_back(*std::min_element(cyc.begin(), cyc.end()));
    }
  }
  std::vector<FormClass> out;
  if (N == 1) {
    for (const auto& q : level1) out.emplace_back(q, 1);
    return out;
  }
  // coset representatives from P^1(Z/N)
  std::vector<Mat2> cosets;
  for (Int c = 0; c < N; ++c)
    for (Int d = 0; d < N; ++d) {
      if (std::gcd(std::gcd(c, d), N) != 1) continue;
      // lift (c, d) to a coprime pair and complete to SL2(Z)
      Int cc = c, dd = d;
      for (Int k = 0; std::gcd(cc, dd) != 1; ++k) dd = d + k * N;
      if (cc == 0 && dd != 1) {
        // use (N, dd) instead to keep a unimodular lift
        cc = N;
        while (std::gcd(cc, dd) != 1) dd += N;
      }
      // find a, b with a dd - b cc = 1
      Int g = 0, x = 0, y = 0;
      {
        Int r0 = dd, r1 = cc, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (r1 != 0) {
          Int qq = r0 / r1;
          Int tmp = r0 - qq * r1; r0 = r1; r1 = tmp;
          tmp = s0 - qq * s1; s0 = s1; s1 = tmp;
          tmp = t0 - qq * t1; t0 = t1; t1 = tmp;
        }
        g = r0; x = s0; y = t0;  // x dd + y cc = g
      }
      if (g < 0) { x = -x; y = -y; }
      // matrix [[x, -y],[cc, dd]] has det x dd + y cc = 1; use its transpose-style
      // column (first column = (a : c)) for Q o r, a' = Q(first column)
      cosets.push_back(Mat2{dd, -y, cc, x});
    }
  for (const auto& q : level1) {
    std::vector<QForm> found;
    for (const auto& r : cosets) {
      if (r.det() != 1) continue;
      QForm cand = q.apply(r);
      cand.level = N;
      if (cand.a % N != 0) continue;
      bool dup = false;
      for (const auto& f : found) {
        auto e = equivalent(f, cand, N);
        if (e.status != Equivalence::inequivalent) { dup = true; break; }
      }
      if (!dup) found.push_back(cand);
    }
    for (const auto& f : found) out.emplace_back(f, N);
  }
  return out;
}

// --------------------------------------------------------------- automorphs

PellSolution pell_fundamental(Int D) {
  if (D <= 0 || is_square(D)) throw UnsupportedDiscriminant("Pell needs non-square D > 0");
  for (Int u = 1; u < 100000000; ++u) {
    __int128 t2 = (__int128)D * u * u + 4;
    if (t2 > (__int128)4e18) break;
    Int t = isqrt(static_cast<Int>(t2));
    if ((__int128)t * t == t2) return {BigInt(t), BigInt(u)};
  }
  throw std::runtime_error("pell_fundamental: search bound exceeded");
}

Mat2 automorph(const QForm& A, Int N) {
  PellSolution p = pell_fundamental(A.disc());
  Int t = p.t.convert_to<Int>(), u = p.u.convert_to<Int>();
  Mat2 M{(t - A.b * u) / 2, -A.c * u, A.a * u, (t + A.b * u) / 2};
  if (!(A.apply(M) == A)) throw std::logic_error("automorph does not fix the form");
  Mat2 P = M;
  for (int n = 1; n < 100000; ++n) {
    if (P.c % N == 0) return P;
    P = P * M;
  }
  throw std::runtime_error("automorph: no power in Gamma0(N) found");
}

Geodesic geodesic(const QForm& A, Int N) {
  Geodesic g;
  g.form = A;
  g.center = Rational(-A.b, 2 * A.a);
  g.radius_sq = Rational(A.disc(), 4 * A.a * A.a);
  g.stabilizer_gen = automorph(A, N);
  return g;
}

// ----------------------------------------------------------------- CM points

Complex QuadraticPoint::to_complex() const {
  Real s = boost::multiprecision::sqrt(Real(-d));
  return {to_real(u), Real(to_real(v) * s)};
}

Real QuadraticPoint::imag() const { return to_real(v) * boost::multiprecision::sqrt(Real(-d)); }

std::string QuadraticPoint::str() const {
  return to_string(u) + " + " + to_string(v) + "*i*sqrt(" + std::to_string(-d) + ")";
}

QuadraticPoint cm_point(const QForm& P) {
  if (P.disc() >= 0 || P.a <= 0) throw std::domain_error("cm_point: positive definite form required");
  QuadraticPoint t;
  t.d = P.disc();
  t.u = Rational(-P.b, 2 * P.a);
  t.v = Rational(1, 2 * P.a);
  return t;
}

int stabilizer_order(const QForm& P, Int N) {
  int count = 0;
  for (const auto& g : stabilizer(P))
    if (g.c % N == 0) ++count;
  return count / 2;
}

// ------------------------------------------------------------ characters

int kronecker(Int a, Int n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  while (n % 2 == 0) {
    n /= 2;
    if (a % 2 == 0) return 0;
    Int r = floor_mod(a, 8);
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi (a/n), n odd positive
  Int aa = floor_mod(a, n);
  Int nn = n;
  while (aa != 0) {
    while (aa % 2 == 0) {
      aa /= 2;
      Int r = nn % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(aa, nn);
    if (aa % 4 == 3 && nn % 4 == 3) result = -result;
    aa %= nn;
  }
  return nn == 1 ? result : 0;
}

bool is_fundamental(Int D) {
  if (D == 1) return true;
  if (D == 0 || is_square(D)) return false;
  Int m = floor_mod(D, 4);
  auto squarefree = [](Int x) {
    x = std::llabs(x);
    for (Int p = 2; p * p <= x; ++p)
      if (x % (p * p) == 0) return false;
    return true;
  };
  if (m == 1) return squarefree(D);
  if (m != 0) return false;
  Int e = D / 4;
  Int em = floor_mod(e, 4);
  return (em == 2 || em == 3) && squarefree(e);
}

int genus_character(Int delta, const QForm& Q) {
  if (delta == 1) return 1;
  Int g = std::gcd(Q.content(), std::llabs(delta));
  if (g > 1) return 0;
  for (int pass = 0; pass < 2; ++pass) {
    for (Int r = 1; r <= 20; ++r) {
      for (Int x = -r; x <= r; ++x)
        for (Int y = -r; y <= r; ++y) {
          if (std::max(std::llabs(x), std::llabs(y)) != r) continue;
          if (std::gcd(x, y) != 1) continue;
          Int n = Q.eval(x, y);
          if (n == 0 || std::gcd(std::llabs(n), std::llabs(delta)) != 1) continue;
          if ((pass == 0) != (n > 0)) continue;
          return kronecker(delta, n);
        }
    }
  }
  throw std::logic_error("genus_character: no coprime represented value found");
}

Rational q_tau_scaled(const QForm& Q, const QuadraticPoint& tau) {
  Rational r = Rational(Q.a) * (tau.u * tau.u + tau.v * tau.v * Rational(-tau.d)) + Rational(Q.b) * tau.u +
               Rational(Q.c);
  return r / tau.v;
}

Real q_tau(const QForm& Q, const Complex& tau) {
  return (Real(Q.a) * norm(tau) + Real(Q.b) * tau.re + Real(Q.c)) / tau.im;
}

bool in_interior(const QForm& Q, const QuadraticPoint& tau) {
  Rational s = q_tau_scaled(Q, tau);
  return (Q.a > 0 && s < 0) || (Q.a < 0 && s > 0);
}

}  // namespace bqf
