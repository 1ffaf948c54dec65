#include "bqf/cycles.hpp"

#include "bqf/quadrature.hpp"
#include "bqf/zeta.hpp"

#include <algorithm>
#include <cmath>

namespace bqf {

namespace {

Real atanh_r(const Real& x) { return log((1 + x) / (1 - x)) / 2; }

Complex zpt(const GeodesicSegment& g, const Complex& s) {
  Complex e = exp(s), ei = Complex(1) / e;
  Complex sech = Complex(2) / (e + ei);
  Complex tanh = (e - ei) / (e + ei);
  return Complex(g.center) + (tanh + Complex::i() * sech) * g.radius;
}

Complex dzds(const GeodesicSegment& g, const Complex& s) {
  Complex e = exp(s), ei = Complex(1) / e;
  Complex sech = Complex(2) / (e + ei);
  Complex tanh = (e - ei) / (e + ei);
  return (sech * sech - Complex::i() * sech * tanh) * g.radius;
}

Real s_of(const GeodesicSegment& g, const Complex& z) { return atanh_r((z.re - g.center) / g.radius); }

bool in_range(const GeodesicSegment& g, const Real& s, const Real& lo) {
  Real hi = lo + g.s1;
  return g.s1 > 0 ? (s >= lo && s < hi) : (s <= lo && s > hi);
}

}  // namespace

GeodesicSegment geodesic_segment(const QForm& A, Int N) {
  if (A.disc() <= 0) throw std::domain_error("geodesic_segment: form must be indefinite");
  Int D = A.disc();
  Int r0 = static_cast<Int>(std::llround(std::sqrt(static_cast<double>(D))));
  for (Int t = std::max<Int>(0, r0 - 1); t <= r0 + 1; ++t)
    if (t * t == D) throw std::domain_error("geodesic_segment: square discriminant");
  GeodesicSegment g;
  g.A = A;
  g.level = N;
  g.center = Real(-A.b) / Real(2 * A.a);
  g.radius = sqrt(Real(D)) / abs(Real(2 * A.a));
  g.M = automorph(A, N);
  g.z0 = Complex(g.center, g.radius);
  g.z1 = g.M.act(g.z0);
  g.s1 = s_of(g, g.z1);
  return g;
}

bool on_geodesic(const QForm& A, const QForm& Q) { return 2 * A.a * Q.c - A.b * Q.b + 2 * A.c * Q.a == 0; }

std::vector<QForm> forms_on_geodesic(const GeodesicSegment& g, Int disc_Q, const Real& s_lo) {
  if (disc_Q >= 0) throw std::domain_error("forms_on_geodesic: definite discriminant expected");
  std::vector<QForm> out;
  Real smax = max(abs(s_lo), abs(Real(s_lo + g.s1)));
  Real ymin = g.radius * 2 / (exp(smax) + exp(-smax));
  double amax = std::sqrt(static_cast<double>(-disc_Q)) / (2 * ymin.convert_to<double>()) + 1;
  const QForm& A = g.A;
  for (Int a = 1; a <= static_cast<Int>(amax); ++a) {
    double lo = -2.0 * a * (g.center + g.radius).convert_to<double>() - 1;
    double hi = -2.0 * a * (g.center - g.radius).convert_to<double>() + 1;
    for (Int b = static_cast<Int>(std::floor(lo)); b <= static_cast<Int>(std::ceil(hi)); ++b) {
      Int num = b * b - disc_Q;
      if (num % (4 * a)) continue;
      Int c = num / (4 * a);
      QForm q = QForm::unchecked(a, b, c, g.level);
      if (!on_geodesic(A, q)) continue;
      Real s = s_of(g, cm_point(q).to_complex());
      if (in_range(g, s, s_lo)) out.push_back(q);
    }
  }
  return out;
}

std::vector<QForm> poles_on_geodesic(const QForm& A, const FormClass& P, Int N) {
  auto g = geodesic_segment(A, N);
  std::vector<QForm> out;
  for (const auto& q : forms_on_geodesic(g, P.disc(), Real(0)))
    if (P.contains(q)) out.push_back(q);
  return out;
}

namespace {

// parameters s of the poles of f on the segment [lo, lo + s1)
std::vector<std::pair<Real, QForm>> pole_params(const GeodesicSegment& g, const ModularFunction& f, const Real& lo) {
  std::vector<std::pair<Real, QForm>> out;
  for (const auto& p : f.poles) {
    const Int m = p.m;
    for (const auto& q : forms_on_geodesic(g, m * m * p.P.disc(), lo)) {
      bool hit = false;
      if (m == 1) {
        hit = p.P.contains(q);
      } else {
        for (const auto& R : p.reps) {
          Mat2 adj{R.d, -R.b, -R.c, R.a};
          QForm t = QForm::unchecked(q.a, q.b, q.c).apply(adj);
          if (t.a % (m * m) || t.b % (m * m) || t.c % (m * m)) continue;
          QForm t2 = QForm::unchecked(t.a / (m * m), t.b / (m * m), t.c / (m * m), p.P.level);
          if (t2.disc() == p.P.disc() && p.P.contains(t2)) {
            hit = true;
            break;
          }
        }
      }
      if (!hit) continue;
      Real s = s_of(g, cm_point(q).to_complex());
      bool dup = false;
      for (const auto& e : out) dup = dup || abs(e.first - s) < Real("1e-20");
      if (!dup) out.emplace_back(s, q);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

struct Pass {
  Complex value;
  Real err;
  int panels = 0, evals = 0;
};

Pass integrate(const GeodesicSegment& g, const std::function<Complex(const Complex&)>& h, const Real& lo,
               const std::vector<Real>& poles, const std::vector<Real>& eps, const Precision& prec) {
  Pass out;
  out.err = 0;
  Real a = min(lo, Real(lo + g.s1)), b = max(lo, Real(lo + g.s1));
  // orientation: z0 -> M^{-1} z0, i.e. against the parameter shift of M
  Real sign = g.s1 > 0 ? Real(-1) : Real(1);
  auto line = [&](const Real& x, const Real& y) {
    if (!(y > x)) return;
    auto r = gauss_legendre([&](const Real& s) { return h(Complex(s)); }, x, y, prec);
    out.value += r.value;
    out.err += r.err_est;
    out.panels += r.panels;
    out.evals += r.evaluations;
  };
  Real cur = a;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const Real& sp = poles[i];
    const Real& e = eps[i];
    line(cur, Real(sp - e));
    // upper and lower semicircles from sp - e to sp + e, averaged
    Complex arc(0);
    for (int side : {+1, -1}) {
      auto r = gauss_legendre(
          [&](const Real& th) {
            Complex w = expi(th);
            Complex s = Complex(sp) + w * e;
            return h(s) * (Complex::i() * w * e);
          },
          side > 0 ? Real(0) : pi(), side > 0 ? pi() : Real(2 * pi()), prec);
      // upper arc runs from theta = pi down to 0
      arc += side > 0 ? -r.value : r.value;
      out.err += r.err_est / 2;
      out.panels += r.panels;
      out.evals += r.evaluations;
    }
    out.value += arc / Real(2);
    cur = sp + e;
  }
  line(cur, b);
  out.value = out.value * sign;
  return out;
}

CycleIntegralResult cycle_integral_at(const ModularFunction& f, const QForm& A, const Precision& prec,
                                      const CycleOptions& opts, bool may_raise) {
  PrecisionScope scope(prec);
  GeodesicSegment g = geodesic_segment(A, f.level);
  const int k = f.k();
  auto h = [&](const Complex& s) {
    Complex z = zpt(g, s);
    return f(z) * pow(A.eval(z), k - 1) * dzds(g, s);
  };
  Real L = abs(g.s1);
  Real lo = Real(opts.base_shift);
  auto poles = pole_params(g, f, lo);

  CycleIntegralResult res;
  // keep the base point away from poles; poles repeat with period |s1|
  for (int tries = 0; tries < 16; ++tries) {
    bool near = false;
    for (const auto& [s, q] : poles) {
      Real d = abs(s - lo);
      d = min(d, abs(L - d));
      near = near || d < L / 50;
    }
    if (!near) break;
    lo += L / Real(7 + tries);
    poles = pole_params(g, f, lo);
  }
  // a detour of relative radius eps around a pole of order k cancels about
  // k log2(1/eps) bits, so PV integrals are redone with that many guard bits
  if (may_raise && !poles.empty()) {
    unsigned extra = static_cast<unsigned>(std::ceil(k * std::log2(2.0 / opts.eps_rel))) + 16;
    auto hi = cycle_integral_at(f, A, prec.raised(extra), opts, false);
    hi.value = Complex(rounded(hi.value.re), rounded(hi.value.im));
    hi.err_est = rounded(hi.err_est);
    return hi;
  }
  for (const auto& [s, q] : poles) res.poles_on_cycle.push_back(cm_point(q));
  res.pv_used = !poles.empty();

  std::vector<Real> ps, eps;
  Real a = min(lo, Real(lo + g.s1));
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const Real& s = poles[i].first;
    // detour radius in z is eps_rel * radius; |dz/ds| = Im z
    Real y = zpt(g, Complex(s)).im;
    Real e = Real(opts.eps_rel) * g.radius / y;
    Real gap = L;
    if (i > 0) gap = min(gap, Real(s - poles[i - 1].first));
    if (i + 1 < poles.size()) gap = min(gap, Real(poles[i + 1].first - s));
    gap = min(gap, Real(s - a));
    gap = min(gap, Real(a + L - s));
    e = min(e, gap / 4);
    ps.push_back(s);
    eps.push_back(e);
  }
  Pass p1 = integrate(g, h, lo, ps, eps, prec);
  res.value = p1.value;
  res.err_est = p1.err;
  res.panels = p1.panels;
  res.evaluations = p1.evals;
  if (res.pv_used) {
    std::vector<Real> half;
    for (const auto& e : eps) half.push_back(e / 2);
    Pass p2 = integrate(g, h, lo, ps, half, prec);
    res.err_est = max(res.err_est, p2.err) + abs(p2.value - p1.value);
    res.value = p2.value;
    res.panels += p2.panels;
    res.evaluations += p2.evals;
  }
  return res;
}

}  // namespace

CycleIntegralResult cycle_integral(const ModularFunction& f, const QForm& A, const Precision& prec,
                                   const CycleOptions& opts) {
  return cycle_integral_at(f, A, prec, opts, true);
}

std::optional<BigRationalResult> cycle_integral_rational(const ModularFunction& f, const QForm& A,
                                                         const BigInt& den_bound, const Precision& prec) {
  PrecisionScope scope(prec);
  auto r = cycle_integral(f, A, prec);
  Real tol = max(Real(r.err_est * 10), prec.target_abs_err());
  if (abs(r.value.im) > tol * max(Real(1), abs(r.value.re))) return std::nullopt;
  auto q = rational_reconstruct(r.value.re, tol * max(Real(1), abs(r.value.re)), den_bound);
  if (!q) return std::nullopt;
  BigRationalResult out;
  out.value = *q;
  out.method = RationalMethod::reconstructed;
  out.denominator_bound = den_bound;
  return out;
}

Complex eisenstein_cycle_integral(int k, const QForm& A, const Precision& prec) {
  return cycle_integral(eisenstein_function(k, prec), A, prec).value;
}

}  // namespace bqf
