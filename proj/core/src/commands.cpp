#include "bqf/commands.hpp"

#include "bqf/cycles.hpp"
#include "bqf/localpoly.hpp"
#include "bqf/merforms.hpp"
#include "bqf/modforms.hpp"
#include "bqf/zeta.hpp"

#include <chrono>
#include <sstream>

namespace bqf {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void check_k(int k) {
  if (k < 1 || k > 40) throw UsageError("--k must be between 1 and 40");
}

void check_bits(unsigned bits) {
  if (bits < 64 || bits > 4096) throw UsageError("--prec must be between 64 and 4096 bits");
}

Precision make_prec(unsigned bits) {
  // aim a little below the working precision
  int target = -static_cast<int>(bits * 0.30103 * 0.8);
  return Precision::make(bits, target);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string tok;
  std::istringstream is(s);
  while (std::getline(is, tok, sep))
    if (tok.find_first_not_of(' ') != std::string::npos) out.push_back(tok);
  return out;
}

Int parse_int(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    while (pos < s.size() && s[pos] == ' ') ++pos;
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError(std::string("malformed ") + what + ": '" + s + "'");
  }
}

FormClass positive_definite(const std::string& s, Int level) {
  QForm P = parse_form_arg(s, level, "--posdef");
  if (P.disc() >= 0 || P.a <= 0) throw UsageError("--posdef must be positive definite: " + s);
  return FormClass(P, level);
}

QForm indefinite(const std::string& s, Int level) {
  QForm A = parse_form_arg(s, level, "--indef");
  Int D = A.disc();
  if (D <= 0 || is_square(D)) throw UsageError("--indef needs a positive non-square discriminant: " + s);
  return A;
}

// reports carry forms as "a,b,c"
std::string csv(const QForm& q) {
  return std::to_string(q.a) + "," + std::to_string(q.b) + "," + std::to_string(q.c);
}

void fill_cycle(Report& r, const CycleIntegralResult& c) {
  r.value = c.value;
  r.err_est = c.err_est;
  r.pv_used = c.pv_used;
  if (!c.poles_on_cycle.empty()) r.add_extra("poles_on_cycle", std::to_string(c.poles_on_cycle.size()));
}

// reconstruct only when the imaginary part is negligible
std::optional<Rational> try_rational(const CycleIntegralResult& c, const BigInt& bound, const Precision& p) {
  Real tol = max(Real(c.err_est * 10), p.target_abs_err());
  Real scale = max(Real(1), abs(c.value.re));
  if (abs(c.value.im) > tol * scale) return std::nullopt;
  return rational_reconstruct(c.value.re, tol * scale, bound);
}

}  // namespace

QForm parse_form_arg(const std::string& s, Int level, const char* what) {
  auto parts = split(s, ',');
  if (parts.size() != 3) throw UsageError(std::string("malformed ") + what + ": expected a,b,c, got '" + s + "'");
  Int a = parse_int(parts[0], what), b = parse_int(parts[1], what), c = parse_int(parts[2], what);
  if (level < 1) throw UsageError("--level must be positive");
  if (a % level != 0) throw UsageError(std::string(what) + ": level must divide a");
  return QForm::unchecked(a, b, c, level);
}

BigInt parse_bigint_arg(const std::string& s, const char* what) {
  try {
    BigInt v(s);
    if (v <= 0) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("malformed ") + what + ": '" + s + "'");
  }
}

Report cmd_cycle(const CycleArgs& a) {
  auto t0 = Clock::now();
  check_k(a.k);
  check_bits(a.bits);
  FormClass P = positive_definite(a.posdef, a.level);
  QForm A = indefinite(a.indef, a.level);
  BigInt bound = parse_bigint_arg(a.den_bound, "--den-bound");
  Precision p = make_prec(a.bits);
  PrecisionScope ps(p);
  Report r;
  r.command = "cycle";
  r.add_input("k", std::to_string(a.k));
  r.add_input("posdef", csv(P.representative));
  r.add_input("indef", csv(A));
  r.add_input("level", std::to_string(a.level));
  r.add_input("den_bound", bound.str());
  r.precision_bits = a.bits;
  auto f = f_kP(P, a.k, p);
  auto c = cycle_integral(f, A, p);
  fill_cycle(r, c);
  r.rational = try_rational(c, bound, p);
  r.runtime_ms = ms_since(t0);
  return r;
}

Report cmd_theorem1(const Theorem1Args& a) {
  auto t0 = Clock::now();
  check_k(a.k);
  check_bits(a.bits);
  FormClass P = positive_definite(a.posdef, a.level);
  std::vector<CombinationTerm> combo;
  for (const auto& term : split(a.combo, ';')) {
    auto colon = term.find(':');
    if (colon == std::string::npos) throw UsageError("--combo terms look like coeff:a,b,c, got '" + term + "'");
    Int c = parse_int(term.substr(0, colon), "--combo coefficient");
    QForm A = indefinite(term.substr(colon + 1), a.level);
    combo.push_back({c, FormClass(A, a.level)});
  }
  if (combo.empty()) throw UsageError("--combo is empty");
  Precision p = make_prec(a.bits);
  PrecisionScope ps(p);
  Report r;
  r.command = "theorem1";
  r.add_input("k", std::to_string(a.k));
  r.add_input("posdef", csv(P.representative));
  r.add_input("combo", a.combo);
  r.add_input("level", std::to_string(a.level));
  r.precision_bits = a.bits;
  auto rhs = theorem1_rhs(a.k, P, combo);
  auto f = f_kP(P, a.k, p);
  Complex lhs(0);
  Real err = 0;
  for (const auto& t : combo) {
    auto c = cycle_integral(f, t.A.representative, p);
    lhs += c.value * Real(t.coeff);
    err += c.err_est * abs(Real(t.coeff));
    r.pv_used = r.pv_used || c.pv_used;
  }
  r.value = lhs;
  r.err_est = err;
  r.rational = rhs.value;
  r.add_extra("rhs", to_string(rhs.value));
  r.add_extra("lhs_minus_rhs", real_to_string(abs(lhs - Complex(to_real(rhs.value))), 64));
  r.runtime_ms = ms_since(t0);
  return r;
}

Report cmd_theorem2(const Theorem2Args& a) {
  auto t0 = Clock::now();
  check_k(a.k);
  check_bits(a.bits);
  FormClass P = positive_definite(a.posdef, a.level);
  QForm A = indefinite(a.indef, a.level);
  RelationVector lam;
  for (const auto& t : split(a.lambda, ',')) parse_int(t, "--lambda");
  try {
    lam = RelationVector::parse(a.lambda, a.k, a.level);
  } catch (const std::exception&) {
    throw UsageError("malformed --lambda: '" + a.lambda + "'");
  }
  Precision p = make_prec(a.bits);
  PrecisionScope ps(p);
  Report r;
  r.command = "theorem2";
  r.add_input("k", std::to_string(a.k));
  r.add_input("posdef", csv(P.representative));
  r.add_input("indef", csv(A));
  r.add_input("lambda", lam.str());
  r.add_input("level", std::to_string(a.level));
  r.precision_bits = a.bits;
  auto rhs = theorem2_rhs(a.k, P, FormClass(A, a.level), lam);
  auto f = hecke_translate(f_kP(P, a.k, p), lam);
  auto c = cycle_integral(f, A, p);
  fill_cycle(r, c);
  r.rational = rhs.value;
  r.add_extra("rhs", to_string(rhs.value));
  r.add_extra("lhs_minus_rhs", real_to_string(abs(c.value - Complex(to_real(rhs.value))), 64));
  r.runtime_ms = ms_since(t0);
  return r;
}

Report cmd_localpoly(const LocalPolyArgs& a) {
  auto t0 = Clock::now();
  check_k(a.k);
  check_bits(a.bits);
  FormClass P = positive_definite(a.posdef, a.level);
  QForm A = indefinite(a.indef, a.level);
  Precision p = make_prec(a.bits);
  PrecisionScope ps(p);
  Report r;
  r.command = "localpoly";
  r.add_input("k", std::to_string(a.k));
  r.add_input("indef", csv(A));
  r.add_input("posdef", csv(P.representative));
  r.add_input("level", std::to_string(a.level));
  r.precision_bits = a.bits;
  QuadraticPoint tau = cm_point(P.representative);
  ZetaOptions zo;
  zo.prec = p;
  auto v = local_poly_exact(a.k, FormClass(A, a.level), tau, zo);
  r.rational = v.value;
  r.value = Complex(to_real(v.value));
  r.err_est = Real(0);
  r.add_extra("tau", tau.str());
  r.add_extra("zeta_term", to_string(v.zeta_term));
  r.add_extra("interior_term", to_string(v.interior_term));
  r.add_extra("scaling", "|d|^{(k-1)/2} P_{k,A}(tau)");
  r.runtime_ms = ms_since(t0);
  return r;
}

Report cmd_zeta(const ZetaArgs& a) {
  auto t0 = Clock::now();
  if (a.k < 2 || a.k > 40) throw UsageError("--k must be between 2 and 40");
  check_bits(a.bits);
  if (a.cutoff < 100) throw UsageError("--cutoff must be at least 100");
  QForm A = indefinite(a.indef, a.level);
  Precision p = make_prec(a.bits);
  PrecisionScope ps(p);
  Report r;
  r.command = "zeta";
  r.add_input("k", std::to_string(a.k));
  r.add_input("indef", csv(A));
  r.add_input("level", std::to_string(a.level));
  r.add_input("cutoff", std::to_string(a.cutoff));
  r.add_input("cross_check", a.cross_check ? "true" : "false");
  r.precision_bits = a.bits;
  ZetaOptions zo;
  zo.prec = p;
  zo.cutoff = a.cutoff;
  zo.cross_check = a.cross_check;
  auto z = zeta_rational_combination(FormClass(A, a.level), a.k, zo);
  r.value = Complex(z.numeric);
  r.err_est = z.err;
  r.rational = z.value.value;
  r.add_extra("quantity", "D^{k-1/2} (zeta_A(k) + (-1)^k zeta_{-A}(k))");
  r.add_extra("verified_at_two_precisions", z.value.verified_at_two_precisions ? "true" : "false");
  if (z.cross_check) r.add_extra("eisenstein_cycle_integral", real_to_string(z.cross_check->re, a.bits));
  r.runtime_ms = ms_since(t0);
  return r;
}

Report cmd_relation(const RelationArgs& a, const Cache& cache) {
  auto t0 = Clock::now();
  check_k(a.k);
  if (a.level < 1) throw UsageError("--level must be positive");
  if (a.support < 0 || a.support > 400) throw UsageError("--support must be between 0 and 400");
  Report r;
  r.command = "relation";
  r.add_input("k", std::to_string(a.k));
  r.add_input("level", std::to_string(a.level));
  r.add_input("support", std::to_string(a.support));
  std::string key = "relations;k=" + std::to_string(a.k) + ";N=" + std::to_string(a.level) +
                    ";B=" + std::to_string(a.support);
  std::string joined;
  if (auto hit = cache.get(CacheKind::qseries, key)) {
    joined = *hit;
  } else {
    std::vector<RelationVector> rels;
    if (a.support > 0) {
      rels = find_relations(a.k, a.level, a.support);
    } else {
      for (int B = 1; B <= 400 && rels.empty(); ++B) rels = find_relations(a.k, a.level, B);
    }
    for (std::size_t i = 0; i < rels.size(); ++i) joined += (i ? ";" : "") + rels[i].str();
    cache.put(CacheKind::qseries, key, joined);
  }
  r.add_extra("relations", joined);
  r.runtime_ms = ms_since(t0);
  return r;
}

Report cmd_twisted(const TwistedArgs& a) {
  auto t0 = Clock::now();
  check_k(a.k);
  check_bits(a.bits);
  QForm A = indefinite(a.indef, a.level);
  BigInt bound = parse_bigint_arg(a.den_bound, "--den-bound");
  struct Term {
    Int c, Delta, delta;
  };
  std::vector<Term> terms;
  for (const auto& t : split(a.terms, ';')) {
    auto colon = t.find(':');
    if (colon == std::string::npos) throw UsageError("--terms look like coeff:Delta,delta, got '" + t + "'");
    auto dd = split(t.substr(colon + 1), ',');
    if (dd.size() != 2) throw UsageError("--terms look like coeff:Delta,delta, got '" + t + "'");
    terms.push_back({parse_int(t.substr(0, colon), "--terms"), parse_int(dd[0], "--terms"), parse_int(dd[1], "--terms")});
  }
  if (terms.empty()) throw UsageError("--terms is empty");
  Precision p = make_prec(a.bits);
  PrecisionScope ps(p);
  Report r;
  r.command = "twisted";
  r.add_input("k", std::to_string(a.k));
  r.add_input("terms", a.terms);
  r.add_input("indef", csv(A));
  r.add_input("level", std::to_string(a.level));
  r.add_input("den_bound", bound.str());
  r.precision_bits = a.bits;
  std::vector<std::pair<Complex, ModularFunction>> fs;
  for (const auto& t : terms) fs.emplace_back(Complex(Real(t.c)), twisted(t.Delta, t.delta, a.k, p, a.level));
  auto g = combine(fs);
  auto c = cycle_integral(g, A, p);
  fill_cycle(r, c);
  r.rational = try_rational(c, bound, p);
  r.runtime_ms = ms_since(t0);
  return r;
}

}  // namespace bqf
