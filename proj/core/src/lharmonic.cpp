#include "bqf/lharmonic.hpp"

#include "bqf/merforms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <tuple>
#include <stdexcept>

namespace bqf {

namespace {

using LD = long double;
using CLD = std::complex<LD>;

LD to_ld(const Real& x) { return x.convert_to<LD>(); }
CLD to_cld(const Complex& z) { return {to_ld(z.re), to_ld(z.im)}; }

Real binom_real(int n, int r) {
  Real b = 1;
  for (int i = 0; i < r; ++i) b = b * (n - i) / (i + 1);
  return b;
}

Rational binom_rat(int n, int r) {
  BigInt b = 1;
  for (int i = 0; i < r; ++i) b = b * (n - i) / (i + 1);
  return Rational(b);
}

LD psi_ld(int k, LD x) {
  if (x < 0.5L) {
    LD s = 0, c = 1, xp = std::pow(x, LD(k) - 0.5L);
    for (int j = 0; j < 200; ++j) {
      LD t = c * xp / (LD(k) - 0.5L + j);
      s += t;
      if (t <= 1e-21L * s) break;
      c *= (2.0L * j + 1) / (2.0L * j + 2);
      xp *= x;
    }
    return s / 2;
  }
  // t = sin^2 phi turns it into int_0^phi sin^{2k-2}
  LD ph = std::asin(std::sqrt(std::min(x, 1.0L)));
  LD sn = std::sin(ph), cs = std::cos(ph), I = ph;
  for (int m = 1; m <= k - 1; ++m) I = -std::pow(sn, 2 * m - 1) * cs / (2 * m) + (2.0L * m - 1) / (2 * m) * I;
  return I;
}

// all Q in [A] with |Q_tau| <= T; Q_tau = (a|tau|^2 + b u + c)/v
template <class F>
void for_each_form_near(const FormClass& A, LD u, LD v, LD T, F&& fn) {
  Int D = A.disc();
  Int N = A.level;
  Int amax = static_cast<Int>(std::sqrt(T * T + LD(D)) / v) + 1;
  std::map<Int, std::vector<Int>> roots;
  for (Int aa = N; aa <= amax; aa += N) {
    auto r = sqrt_mod_4a(D, aa);
    if (!r.empty()) roots.emplace(aa, std::move(r));
  }
  for (auto& [aa, rs] : roots) {
    // (b + 2au)^2 = 4a v Q_tau - 4a^2 v^2 + D for sign(a) = +, and with -a for -
    LD r2 = 4 * LD(aa) * T * v - 4 * LD(aa) * LD(aa) * v * v + LD(D);
    if (r2 < 0) continue;
    LD r = std::sqrt(r2);
    Int m = 2 * aa;
    for (int sg : {1, -1}) {
      Int a = sg * aa;
      LD lo = -2 * LD(a) * u - r, hi = -2 * LD(a) * u + r;
      for (Int b0 : rs) {
        Int j = static_cast<Int>(std::floor((lo - LD(b0)) / LD(m)));
        for (Int b = b0 + j * m; LD(b) <= hi; b += m) {
          if (LD(b) < lo) continue;
          Int c = (b * b - D) / (4 * a);
          LD qt = (LD(a) * (u * u + v * v) + LD(b) * u + LD(c)) / v;
          if (std::fabs(qt) > T) continue;
          QForm q = QForm::unchecked(a, b, c, N);
          if (!A.contains(q)) continue;
          fn(q, qt);
        }
      }
    }
  }
}

LD taper(LD t, LD T) {
  const LD fr = 0.125L;
  if (t <= fr * T) return 1;
  if (t >= T) return 0;
  LD z = (t - fr * T) / ((1 - fr) * T);
  return 1 - z * z * z * (10 - 15 * z + 6 * z * z);
}

double default_cutoff(int k) {
  switch (k) {
    case 2: return 160000;
    case 3: return 20000;
    case 4: return 5000;
    default: return 2000;
  }
}

struct RawF {
  CLD value;
  LD err;
  long terms = 0;
  bool on = false;
};

RawF class_sum_F(int k, const FormClass& A, CLD tau, LD T) {
  LD u = tau.real(), v = tau.imag();
  LD D = LD(A.disc());
  CLD full = 0, half = 0;
  LD mag = 0;
  RawF out;
  for_each_form_near(A, u, v, T, [&](const QForm& q, LD qt) {
    CLD Q = LD(q.a) * tau * tau + LD(q.b) * tau + LD(q.c);
    LD scale = (std::fabs(LD(q.a)) * std::norm(tau) + std::fabs(LD(q.b) * u) + std::fabs(LD(q.c))) / v;
    int s = qt > 0 ? 1 : -1;
    if (std::fabs(qt) <= 1e-15L * scale) {
      s = 0;  // on S_Q: the one-sided limits are +-, average 0
      out.on = true;
    }
    // |Q(tau,1)|^2 = v^2 (Q_tau^2 + D)
    LD x = D / (qt * qt + D);
    CLD t = LD(s) * std::pow(Q, k - 1) * psi_ld(k, x);
    LD at = std::fabs(qt);
    full += taper(at, T) * t;
    half += taper(at, T / 2) * t;
    mag = std::max(mag, std::abs(t));
    ++out.terms;
  });
  out.value = full;
  out.err = std::abs(full - half) + mag * LD(out.terms) * 1e-19L;
  return out;
}

CLD F_prefactor(int k, Int D) {
  LD b = to_ld(binom_real(2 * k - 2, k - 1));
  return (k % 2 ? -1.0L : 1.0L) * std::pow(LD(D), 0.5L - k) / (b * 3.14159265358979323846264338327950288L);
}

}  // namespace

Real psi_beta(int k, const Real& x) {
  if (k < 1) throw std::domain_error("psi_beta: k >= 1");
  if (x < 0 || x > 1) throw std::domain_error("psi_beta: x outside [0,1]");
  if (x < Real(0.5)) {
    Real s = 0, c = 1, xp = pow(x, Real(k) - Real(0.5));
    Real eps = eps_rel();
    for (int j = 0; j < 100000; ++j) {
      Real t = c * xp / (Real(k) - Real(0.5) + j);
      s += t;
      if (t <= eps * s) break;
      c *= Real(2 * j + 1) / (2 * j + 2);
      xp *= x;
    }
    return s / 2;
  }
  Real ph = asin(sqrt(x));
  Real sn = sin(ph), cs = cos(ph), I = ph;
  for (int m = 1; m <= k - 1; ++m) I = -pow(sn, 2 * m - 1) * cs / (2 * m) + Real(2 * m - 1) / (2 * m) * I;
  return I;
}

LocallyHarmonicValue eval_F(int k, const FormClass& A, const Complex& tau, const Precision& prec,
                            const LharmonicOptions& opts) {
  PrecisionScope ps(prec);
  if (k < 2) throw std::domain_error("eval_F: k >= 2 (weight 0 needs the Hecke trick)");
  Int D = A.disc();
  if (D <= 0 || is_square(D)) throw std::domain_error("eval_F: A must be indefinite of non-square discriminant");
  if (tau.im <= 0) throw std::domain_error("eval_F: tau must lie in the upper half plane");
  LD T = opts.cutoff > 0 ? opts.cutoff : default_cutoff(k);

  // at level 1 move tau into the fundamental domain; weight 2-2k
  Complex z = tau;
  Complex jac(1);
  if (A.level == 1 && opts.reduce) {
    auto red = reduce_to_fd(tau);
    z = red.z;
    jac = pow(red.gamma.j(tau), 2 * k - 2);
  }
  RawF raw = class_sum_F(k, A, to_cld(z), T);
  CLD pre = F_prefactor(k, D);
  CLD val = pre * raw.value;
  LocallyHarmonicValue out{k, A, tau, Complex(), raw.on, Real(), raw.terms};
  Complex vz(Real(val.real()), Real(val.imag()));
  out.value = vz * jac;
  out.err_est = Real(raw.err * std::abs(pre)) * abs(jac);
  Real floor = abs(out.value) * Real(1e-17L) * Real(raw.terms);
  if (out.err_est < floor) out.err_est = floor;
  return out;
}

Rational ck_scaled(int k, const FormClass& A, const ZetaOptions& zopts) {
  if (k < 2) return Rational(0);
  static std::mutex mu;
  static std::map<std::tuple<int, Int, Int, Int, Int>, Rational> memo;
  const QForm& kf = A.level == 1 ? A.reduced : A.representative;
  auto key = std::make_tuple(k, A.level, kf.a, kf.b, kf.c);
  {
    std::lock_guard<std::mutex> lk(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  ZetaRational Z = zeta_rational_combination(A, k, zopts);
  // c_k = -Z D^{1/2-k} / (2^{2k-2} (2k-1) binom)
  Rational den = Rational(BigInt(1) << (2 * k - 2)) * (2 * k - 1) * binom_rat(2 * k - 2, k - 1);
  Rational c = -Z.value.value / den;
  std::lock_guard<std::mutex> lk(mu);
  memo.emplace(key, c);
  return c;
}

LocalPolynomialP local_polynomial_P(int k, const FormClass& A, const Complex& tau, const Precision& prec,
                                    const ZetaOptions& zopts) {
  PrecisionScope ps(prec);
  if (k < 1) throw std::domain_error("local_polynomial_P: k >= 1");
  Int D = A.disc();
  LocalPolynomialP out{k, A, ck_scaled(k, A, zopts), {}, {}, Complex()};
  Real u = rounded(tau.re), v = rounded(tau.im);
  // interior of S_Q forces |Q_tau| <= D/(4|a| v)
  LD T = LD(D) / (4 * to_ld(v)) + 1;
  Complex sum(0);
  for_each_form_near(A, to_ld(u), to_ld(v), T, [&](const QForm& q, LD) {
    Real qt = (Real(q.a) * (u * u + v * v) + Real(q.b) * u + Real(q.c));
    Real scale = abs(Real(q.a)) * (u * u + v * v) + abs(Real(q.b) * u) + abs(Real(q.c));
    Complex Q = Real(q.a) * tau * tau + Real(q.b) * tau + Complex(Real(q.c));
    Complex term = pow(Q, k - 1);
    if (q.a < 0) term = -term;
    if (abs(qt) <= scale * eps_rel() * 64) {
      out.boundary.push_back(q);
      sum += term / Real(2);
    } else if ((qt < 0) == (q.a > 0)) {
      out.interior.push_back(q);
      sum += term;
    }
  });
  Real Dr(D);
  Real dpow = pow(Dr, Real(1) / 2 - k);
  Real sgn = (k % 2) ? Real(1) : Real(-1);  // (-1)^{k-1}
  out.value = Complex(to_real(out.ck_scaled) * dpow) + sum * (sgn * pow(Real(2), 2 - 2 * k) * dpow);
  return out;
}

Complex eval_fkA(int k, const FormClass& A, const Complex& z) {
  if (k < 2) throw std::domain_error("eval_fkA: k >= 2");
  Int D = A.disc();
  CLD w = to_cld(z);
  LD v = w.imag();
  // tail ~ T^{1-k}; stop at about 1e-19 relative
  LD T = std::max(64.0L, std::pow(10.0L, 19.0L / (k - 1)));
  T = std::min(T, 200000.0L);
  CLD s = 0;
  for_each_form_near(A, w.real(), v, T, [&](const QForm& q, LD) {
    CLD Q = LD(q.a) * w * w + LD(q.b) * w + LD(q.c);
    s += std::pow(Q, -k);
  });
  s *= std::pow(LD(D), LD(k) - 0.5L) / 3.14159265358979323846264338327950288L;
  return {Real(s.real()), Real(s.imag())};
}

CuspExpansion fkA_expansion(int k, const FormClass& A, int M, const Precision& prec) {
  PrecisionScope ps(prec);
  if (A.level != 1) throw std::domain_error("fkA_expansion: level 1 only");
  int dim = cusp_dim(k);
  CuspExpansion out{k, A, {}, {}, Real(0), QSeries::zero(2 * k, M)};
  if (dim == 0) return out;
  auto basis = cusp_basis(k, 1, std::max(M, dim + 4));
  const int n_pts = 48;
  const LD v = 1.5L;
  const LD twopi = 2 * 3.14159265358979323846264338327950288L;
  std::vector<CLD> vals(n_pts);
  for (int j = 0; j < n_pts; ++j) {
    Complex fz = eval_fkA(k, A, Complex(Real(LD(j) / n_pts), Real(v)));
    vals[j] = to_cld(fz);
  }
  // c(n) e^{-2 pi n v} = mean_j f(x_j + iv) e(-n x_j); two extra n as a consistency check
  const int n_coef = dim + 2;
  std::vector<Real> c(n_coef + 1);
  Real max_imag = 0;
  for (int n = 1; n <= n_coef; ++n) {
    CLD s = 0;
    for (int j = 0; j < n_pts; ++j) s += vals[j] * std::polar(1.0L, -twopi * n * j / n_pts);
    s *= std::exp(twopi * n * v) / LD(n_pts);
    c[n] = Real(s.real());
    max_imag = max(max_imag, abs(Real(s.imag())));
  }
  // solve sum_i x_i basis_i(n) = c(n), n = 1..dim
  std::vector<std::vector<Real>> m(dim, std::vector<Real>(dim + 1));
  for (int n = 1; n <= dim; ++n) {
    for (int i = 0; i < dim; ++i) m[n - 1][i] = to_real(basis[i].coeff(n));
    m[n - 1][dim] = c[n];
  }
  for (int col = 0; col < dim; ++col) {
    int piv = col;
    for (int r = col + 1; r < dim; ++r)
      if (abs(m[r][col]) > abs(m[piv][col])) piv = r;
    std::swap(m[col], m[piv]);
    if (m[col][col] == 0) throw std::logic_error("fkA_expansion: singular cusp basis");
    for (int r = 0; r < dim; ++r) {
      if (r == col) continue;
      Real f = m[r][col] / m[col][col];
      for (int cc = col; cc <= dim; ++cc) m[r][cc] -= f * m[col][cc];
    }
  }
  Real cmax = 0;
  for (int i = 0; i < dim; ++i) {
    out.coords.push_back(m[i][dim] / m[i][i]);
    cmax = max(cmax, abs(out.coords.back()));
  }
  Real misfit = 0;
  for (int n = dim + 1; n <= n_coef; ++n) {
    Real pred = 0;
    for (int i = 0; i < dim; ++i) pred += out.coords[i] * to_real(basis[i].coeff(n));
    misfit = max(misfit, abs(pred - c[n]));
  }
  out.err_est = max_imag + misfit + cmax * Real(1e-15);
  QSeries s = QSeries::zero(2 * k, M);
  for (int i = 0; i < dim; ++i) {
    auto r = rational_reconstruct(out.coords[i], out.err_est * 4 + cmax * Real(1e-16), BigInt(1000));
    out.rational.push_back(r);
    Rational ci = r ? *r : to_rational(out.coords[i]);
    for (int n = 0; n <= M; ++n) s.c[n] += ci * basis[i].coeff(n);
  }
  out.series = s;
  return out;
}

SplittingResult splitting_residual(int k, const FormClass& A, const Complex& tau, const Precision& prec,
                                   const LharmonicOptions& opts) {
  PrecisionScope ps(prec);
  if (A.level != 1) throw std::domain_error("splitting_residual: level 1 only");
  SplittingResult out;
  auto F = eval_F(k, A, tau, prec, opts);
  auto P = local_polynomial_P(k, A, tau, prec);
  out.F = F.value;
  out.P = P.value;
  out.err_est = F.err_est;
  Int D = A.disc();
  Real dpow = pow(Real(D), Real(1) / 2 - k);
  if (cusp_dim(k) > 0) {
    int M = static_cast<int>(Real(prec.bits) * log(Real(2)) / (2 * pi() * tau.im).convert_to<double>()) + 30;
    auto ex = fkA_expansion(k, A, M, prec);
    Real sgn = (k % 2) ? Real(-1) : Real(1);
    Real b = binom_real(2 * k - 2, k - 1);
    Real fk = 1;
    for (int i = 2; i <= k - 1; ++i) fk *= i;
    out.eichler_nonhol = eichler_nonholomorphic(ex.series, tau, prec) * (sgn * dpow / b);
    out.eichler_hol = eichler_holomorphic(ex.series, tau, prec) *
                      (-sgn * dpow * fk * fk / pow(4 * pi(), 2 * k - 1));
  }
  out.residual = abs(out.F - out.P - out.eichler_nonhol - out.eichler_hol);
  return out;
}

}  // namespace bqf
