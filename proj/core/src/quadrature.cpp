#include "bqf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace bqf {

namespace bm = boost::multiprecision;

namespace {

GaussRule compute_rule(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  Real tol = eps_rel() * 16;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Real x(std::cos(M_PI * (i + 0.75) / (n + 0.5)));
    Real dp;
    for (int it = 0; it < 200; ++it) {
      Real p0(1), p1 = x;
      for (int m = 1; m < n; ++m) {
        Real p2 = ((2 * m + 1) * x * p1 - m * p0) / (m + 1);
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(x), p0 = P_{n-1}(x)
      dp = n * (x * p1 - p0) / (x * x - 1);
      Real dx = p1 / dp;
      x -= dx;
      if (bm::abs(dx) < tol) {
        if (it > 0) break;
      }
    }
    {
      Real p0(1), p1 = x;
      for (int m = 1; m < n; ++m) {
        Real p2 = ((2 * m + 1) * x * p1 - m * p0) / (m + 1);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
    }
    Real w = 2 / ((1 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.weights[i] = w;
    r.nodes[n - 1 - i] = x;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

}  // namespace

GaussRule gauss_legendre_rule(int n) {
  static std::mutex mu;
  static std::map<std::pair<int, unsigned>, GaussRule> cache;
  unsigned bits = current_bits();
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, bits);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  GaussRule r;
  {
    PrecisionScope guard(bits + 32);
    r = compute_rule(n);
  }
  // round back to the working precision
  for (auto& x : r.nodes) x = Real(x);
  for (auto& w : r.weights) w = Real(w);
  cache.emplace(key, r);
  return r;
}

QuadratureResult gauss_legendre(const std::function<Complex(const Real&)>& f_in, const Real& a,
                                const Real& b, const Precision& prec,
                                const QuadratureOptions& opts_in) {
  PrecisionScope scope(prec);
  if (opts_in.sqrt_singular_start) {
    // x = a + (b-a) t^2 removes an inverse square-root singularity at a
    QuadratureOptions o2 = opts_in;
    o2.sqrt_singular_start = false;
    o2.breakpoints.clear();
    for (const auto& p : opts_in.breakpoints) o2.breakpoints.push_back(bm::sqrt((p - a) / (b - a)));
    Real len = b - a;
    auto g = [&](const Real& t) { return f_in(a + len * t * t) * (2 * len * t); };
    return gauss_legendre(g, Real(0), Real(1), prec, o2);
  }
  const auto& f = f_in;
  const auto& opts = opts_in;
  int order = opts.order > 0 ? opts.order : std::max(16, static_cast<int>(prec.bits / 6));
  const GaussRule rule = gauss_legendre_rule(order);
  Real abs_tol = opts.abs_tol > 0 ? opts.abs_tol : prec.target_abs_err();
  Real rel_tol = opts.rel_tol > 0 ? opts.rel_tol : ldexp2(-static_cast<int>(prec.bits) + 24);

  QuadratureResult res;
  res.err_est = 0;

  auto panel = [&](const Real& lo, const Real& hi) {
    Real half = (hi - lo) / 2;
    Real mid = (hi + lo) / 2;
    Complex s;
    for (int i = 0; i < order; ++i) {
      s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    res.evaluations += order;
    return s * half;
  };

  std::vector<Real> cuts;
  cuts.push_back(a);
  for (const auto& p : opts.breakpoints) {
    if ((p - a) * (b - p) > 0) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin() + 1, cuts.end() - 1, [&](const Real& x, const Real& y) {
    return a < b ? x < y : x > y;
  });

  Real total = bm::abs(b - a);
  struct Item {
    Real lo, hi;
    Complex est;
    int depth;
  };
  std::vector<Item> stack;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    stack.push_back({cuts[i], cuts[i + 1], panel(cuts[i], cuts[i + 1]), 0});
  }

  while (!stack.empty()) {
    Item it = std::move(stack.back());
    stack.pop_back();
    Real mid = (it.lo + it.hi) / 2;
    Complex l = panel(it.lo, mid);
    Complex r = panel(mid, it.hi);
    Complex both = l + r;
    Real diff = abs(both - it.est);
    Real tol = abs_tol * bm::abs(it.hi - it.lo) / total;
    Real rtol = rel_tol * abs(both);
    if (diff <= tol || diff <= rtol) {
      res.value += both;
      res.err_est += diff;
      ++res.panels;
      continue;
    }
    if (it.depth >= opts.max_depth || res.panels + static_cast<int>(stack.size()) > opts.max_panels) {
      throw QuadratureError("quadrature did not converge (worst panel diff " + to_string(diff, 6) + ")",
                            it.lo, it.hi);
    }
    stack.push_back({mid, it.hi, r, it.depth + 1});
    stack.push_back({it.lo, mid, l, it.depth + 1});
  }
  return res;
}

}  // namespace bqf
