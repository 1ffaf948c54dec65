#include "bqf/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace bqf {

namespace {

Int mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

Int mulmod(Int a, Int b, Int m) { return static_cast<Int>((__int128)a * b % m); }

Int powmod(Int b, Int e, Int m) {
  Int r = 1 % m;
  b = mod(b, m);
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

Int inv_mod(Int a, Int m) {
  Int g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1 != 0) {
    Int q = g / a1;
    Int t = g - q * a1; g = a1; a1 = t;
    t = x - q * x1; x = x1; x1 = t;
  }
  if (g != 1) throw std::domain_error("inv_mod: not invertible");
  return mod(x, m);
}

// smallest prime factor sieve, grown on demand
std::mutex sieve_mu;
std::vector<std::uint32_t> spf;

void ensure_sieve(Int n) {
  if (static_cast<Int>(spf.size()) > n) return;
  Int size = std::max<Int>(n + 1, 2 * static_cast<Int>(spf.size()));
  spf.assign(size, 0);
  for (Int i = 2; i < size; ++i) {
    if (spf[i] != 0) continue;
    for (Int j = i; j < size; j += i)
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
  }
}

std::vector<std::pair<Int, int>> factor(Int n) {
  std::vector<std::pair<Int, int>> out;
  {
    std::lock_guard<std::mutex> lk(sieve_mu);
    ensure_sieve(n);
  }
  while (n > 1) {
    Int p = spf[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

Int tonelli(Int n, Int p) {
  n = mod(n, p);
  if (p == 2) return n;
  if (powmod(n, (p - 1) / 2, p) != 1) return -1;
  Int q = p - 1, s = 0;
  while (q % 2 == 0) { q /= 2; ++s; }
  Int z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  Int m = s, c = powmod(z, q, p), t = powmod(n, q, p), r = powmod(n, (q + 1) / 2, p);
  while (t != 1) {
    Int i = 0, tt = t;
    while (tt != 1) { tt = mulmod(tt, tt, p); ++i; }
    Int b = c;
    for (Int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

// all x mod p^e with x^2 = D mod p^e
std::vector<Int> sqrt_mod_prime_power(Int D, Int p, int e) {
  Int pe = 1;
  for (int i = 0; i < e; ++i) pe *= p;
  if (p != 2 && mod(D, p) != 0) {
    Int r = tonelli(D, p);
    if (r < 0) return {};
    Int pk = p;
    for (int i = 1; i < e; ++i) {
      Int pk1 = pk * p;
      // Newton step mod p^{i+1}
      Int fx = mod(mulmod(r, r, pk1) - D, pk1);
      r = mod(r - mulmod(fx, inv_mod(mod(2 * r, pk1), pk1), pk1), pk1);
      pk = pk1;
    }
    if (r == 0) return {0};
    return r == pe - r ? std::vector<Int>{r} : std::vector<Int>{r, pe - r};
  }
  // small primes dividing 2D: lift by brute force
  std::vector<Int> roots;
  for (Int x = 0; x < p; ++x)
    if (mod(x * x - D, p) == 0) roots.push_back(x);
  Int pk = p;
  for (int i = 1; i < e; ++i) {
    Int pk1 = pk * p;
    std::vector<Int> next;
    for (Int r : roots)
      for (Int t = 0; t < p; ++t) {
        Int x = r + t * pk;
        if (mod(mulmod(x, x, pk1) - D, pk1) == 0) next.push_back(x);
      }
    roots.swap(next);
    pk = pk1;
    if (roots.empty()) break;
  }
  return roots;
}

std::int64_t pack(Int a, Int b) { return (a << 24) ^ (b & 0xffffff); }

}  // namespace

std::vector<Int> sqrt_mod_4a(Int D, Int a) {
  if (a <= 0) throw std::domain_error("sqrt_mod_4a: a must be positive");
  Int m = 4 * a;
  std::vector<Int> roots{0};
  Int modulus = 1;
  for (auto [p, e] : factor(m)) {
    auto rp = sqrt_mod_prime_power(D, p, e);
    if (rp.empty()) return {};
    Int pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    std::vector<Int> next;
    Int inv = inv_mod(mod(modulus, pe), pe);
    for (Int r : roots)
      for (Int s : rp) {
        // x = r mod modulus, x = s mod pe
        Int t = mulmod(mod(s - r, pe), inv, pe);
        next.push_back(r + modulus * t);
      }
    roots.swap(next);
    modulus *= pe;
  }
  std::vector<Int> out;
  for (Int x : roots)
    if (x < 2 * a) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

ClassIndex::ClassIndex(Int D) : D_(D), classes_(enumerate_classes(D, 1)) {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    const QForm& r = classes_[i].reduced;
    if (D > 0) {
      for (const auto& f : reduced_cycle(r)) reduced_[pack(f.a, f.b)] = static_cast<int>(i);
    } else {
      reduced_[pack(r.a, r.b)] = static_cast<int>(i);
    }
  }
}

int ClassIndex::find(const QForm& q) const {
  QForm r = reduce(q);
  auto it = reduced_.find(pack(r.a, r.b));
  if (it == reduced_.end()) throw std::logic_error("ClassIndex: reduced form not indexed " + r.str());
  return it->second;
}

Int n_A(Int a, const FormClass& A) {
  Int D = A.disc();
  if (a % A.level != 0) return 0;
  Int count = 0;
  for (Int b : sqrt_mod_4a(D, a)) {
    QForm q = QForm::unchecked(a, b, (b * b - D) / (4 * a), A.level);
    if (A.contains(q)) ++count;
  }
  return count;
}

namespace {

// crude: n_A(a) <= #sqrt(D mod 4a) <= 2^{omega(a)+2} * (small-prime slack) <= cD * d(a),
// and sum_{a>X} d(a) a^{-k} <= (log X + 2) X^{1-k}/(k-1) * 2 for X >= 3.
Real crude_tail_bound(Int D, int k, Int X) {
  Real cD = 8 * Real(std::llabs(D));
  Real lx = log(Real(X));
  return cD * 2 * (lx + 2) * pow(Real(X), 1 - k) / (k - 1);
}

struct Accum {
  Real sum;
  Int count = 0;
  Int count_upper_half = 0;  // a in (X/2, X]
};

void finish(ZetaPartial& zp, const Accum& acc, Int D, int k, Int X) {
  zp.value = acc.sum;
  zp.cutoff = X;
  zp.count = acc.count;
  // average density of n_A over [1, X]; less noisy than any sub-range
  Real C = Real(acc.count) / Real(X);
  zp.tail_estimate = C * pow(Real(X) + Real(1) / 2, 1 - k) / (k - 1);
  zp.tail_bound = crude_tail_bound(D, k, X);
}

}  // namespace

std::vector<ZetaPartial> zeta_partial_all(const ClassIndex& idx, int k, Int cutoff, const Precision& prec) {
  if (k < 2) throw std::domain_error("zeta_partial: k >= 2 required");
  PrecisionScope scope(prec);
  Int D = idx.disc();
  std::vector<Accum> acc(idx.classes().size());
  for (auto& a : acc) a.sum = 0;
  {
    std::lock_guard<std::mutex> lk(sieve_mu);
    ensure_sieve(4 * cutoff);
  }
  for (Int a = 1; a <= cutoff; ++a) {
    auto roots = sqrt_mod_4a(D, a);
    if (roots.empty()) continue;
    Real w = pow(Real(a), -k);
    for (Int b : roots) {
      int i = idx.find(QForm::unchecked(a, b, (b * b - D) / (4 * a)));
      acc[i].sum += w;
      acc[i].count += 1;
      if (2 * a > cutoff) acc[i].count_upper_half += 1;
    }
  }
  std::vector<ZetaPartial> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) finish(out[i], acc[i], D, k, cutoff);
  return out;
}

ZetaPartial zeta_partial(const FormClass& A, int k, Int cutoff, const Precision& prec) {
  if (A.level == 1) {
    ClassIndex idx(A.disc());
    auto all = zeta_partial_all(idx, k, cutoff, prec);
    return all[idx.index_of_class(A)];
  }
  PrecisionScope scope(prec);
  Accum acc;
  acc.sum = 0;
  for (Int a = A.level; a <= cutoff; a += A.level) {
    Int n = n_A(a, A);
    if (n == 0) continue;
    acc.sum += Real(n) * pow(Real(a), -k);
    acc.count += n;
    if (2 * a > cutoff) acc.count_upper_half += n;
  }
  ZetaPartial zp;
  finish(zp, acc, A.disc(), k, cutoff);
  // density estimate above counted only multiples of N
  return zp;
}

BigInt default_zeta_den_bound(int k, Int N) {
  BigInt f = 1;
  for (int i = 2; i <= 2 * k; ++i) f *= i;
  return 16 * f * N * N;
}

namespace {

// value of zeta_A(k) + (-1)^k zeta_{-A}(k) with tail correction, at cutoff X
Real combo_at(const FormClass& A, int k, Int X, const Precision& prec) {
  PrecisionScope scope(prec);
  FormClass negA = A.negated();
  Real sgn = (k % 2 == 0) ? Real(1) : Real(-1);
  if (A.level == 1) {
    ClassIndex idx(A.disc());
    auto all = zeta_partial_all(idx, k, X, prec);
    const auto& za = all[idx.index_of_class(A)];
    const auto& zn = all[idx.index_of_class(negA)];
    return (za.value + za.tail_estimate) + sgn * (zn.value + zn.tail_estimate);
  }
  auto za = zeta_partial(A, k, X, prec);
  auto zn = zeta_partial(negA, k, X, prec);
  return (za.value + za.tail_estimate) + sgn * (zn.value + zn.tail_estimate);
}

}  // namespace

Approximation zeta_combination_numeric(const FormClass& A, int k, Int cutoff, const Precision& prec) {
  PrecisionScope scope(prec);
  Real full = combo_at(A, k, cutoff, prec);
  Real half = combo_at(A, k, cutoff / 2, prec);
  Real quarter = combo_at(A, k, cutoff / 4, prec);
  Real scale = pow(sqrt(Real(A.disc())), 2 * k - 1);
  Approximation r;
  r.value = scale * full;
  // halving differences fluctuate; 4x the larger of two was safe on D <= 60
  Real d = max(abs(full - half), abs(half - quarter));
  r.err = 4 * scale * d + pow10(-static_cast<int>(prec.digits10()) + 5);
  return r;
}

namespace {
std::mutex g_store_mu;
std::shared_ptr<ZetaStore> g_store;

std::shared_ptr<ZetaStore> current_store() {
  std::lock_guard<std::mutex> lk(g_store_mu);
  return g_store;
}
}  // namespace

void set_zeta_store(std::shared_ptr<ZetaStore> store) {
  std::lock_guard<std::mutex> lk(g_store_mu);
  g_store = std::move(store);
}

std::string zeta_store_key(const FormClass& A, int k, const ZetaOptions& opts) {
  BigInt bound = opts.den_bound ? *opts.den_bound : default_zeta_den_bound(k, A.level);
  const QForm& f = A.level == 1 ? A.reduced : A.representative;
  return "D=" + std::to_string(A.disc()) + ";N=" + std::to_string(A.level) + ";k=" + std::to_string(k) +
         ";form=" + f.str() + ";cutoff=" + std::to_string(opts.cutoff) + ";den=" + bound.str() +
         ";bits=" + std::to_string(opts.prec.bits) + ";target=" + std::to_string(opts.prec.target_log10);
}

ZetaRational zeta_rational_combination(const FormClass& A, int k, const ZetaOptions& opts) {
  BigInt bound = opts.den_bound ? *opts.den_bound : default_zeta_den_bound(k, A.level);
  auto store = opts.cross_check ? nullptr : current_store();
  std::string key;
  if (store) {
    key = zeta_store_key(A, k, opts);
    if (auto hit = store->load(key)) return *hit;
  }
  ZetaRational out;
  out.D = A.disc();
  out.k = k;
  out.N = A.level;
  Int X = opts.cutoff;
  bool first = true;
  auto compute = [&](const Precision& p) {
    // second pass doubles the cutoff as well as raising the precision
    Approximation ap = zeta_combination_numeric(A, k, first ? X : 2 * X, p);
    if (first) {
      PrecisionScope s(p);
      out.numeric = ap.value;
      out.err = ap.err;
    }
    first = false;
    return ap;
  };
  auto res = reconstruct_verified(compute, bound, opts.prec, 64);
  if (!res) {
    PrecisionScope s(opts.prec);
    throw ZetaReconstructionError("zeta: rational reconstruction failed at D=" + std::to_string(out.D) +
                                      " k=" + std::to_string(k) + " value=" + to_string(out.numeric, 25),
                                  out.numeric, out.err);
  }
  out.value = *res;
  if (opts.cross_check) out.cross_check = eisenstein_cycle_integral(k, A.representative, opts.prec);
  if (store) store->save(key, out);
  return out;
}

Approximation zeta_level_lowered(const FormClass& A, int k, Int cutoff, const Precision& prec) {
  PrecisionScope scope(prec);
  Int N = A.level;
  Int D = A.disc();
  ClassIndex idx(D);
  auto all = zeta_partial_all(idx, k, cutoff, prec);
  auto half = zeta_partial_all(idx, k, cutoff / 2, prec);
  auto mobius = [](Int n) {
    int m = 1;
    for (Int p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      n /= p;
      if (n % p == 0) return 0;
      m = -m;
    }
    if (n > 1) m = -m;
    return m;
  };
  auto zeta_N = [&](const QForm& Q, const std::vector<ZetaPartial>& z) -> Real {
    Real total = 0;
    for (Int d = 1; d <= N; ++d) {
      if (N % d || mobius(d) == 0) continue;
      Int e = N / d;
      QForm Ad = QForm::unchecked(Q.a / e, Q.b, Q.c * e);
      // [Gamma(1)_{Ad} : Gamma0(d)_{Ad}]: least automorph power in Gamma0(d)
      Mat2 M = automorph(Ad, 1);
      Mat2 P = M;
      Int index = 1;
      while (P.c % d != 0) {
        P = P * M;
        P = Mat2{P.a, P.b, P.c, P.d};
        ++index;
      }
      const auto& zp = z[idx.find(Ad)];
      total += Real(mobius(d)) * pow(Real(d), -k) * Real(index) * (zp.value + zp.tail_estimate);
    }
    Real pre = pow(Real(N), -k);
    for (Int p = 2, n = N; n > 1; ++p) {
      if (n % p) continue;
      while (n % p == 0) n /= p;
      pre /= (1 - pow(Real(p), -2 * k));
    }
    return pre * total;
  };
  Real sgn = (k % 2 == 0) ? Real(1) : Real(-1);
  QForm Q = A.representative;
  Real full = zeta_N(Q, all) + sgn * zeta_N(Q.neg(), all);
  Real hf = zeta_N(Q, half) + sgn * zeta_N(Q.neg(), half);
  Real scale = pow(sqrt(Real(D)), 2 * k - 1);
  return {scale * full, scale * abs(full - hf)};
}

}  // namespace bqf
