#include "bqf/cache.hpp"
#include "bqf/commands.hpp"
#include "bqf/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace bqf;

namespace {

void common_flags(CLI::App* sub, CommonArgs& c) {
  sub->add_option("--prec", c.bits, "working precision in bits")->capture_default_str();
  sub->add_option("--level", c.level, "level N")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cycle integrals of meromorphic modular forms attached to quadratic forms"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  bool compact = false;
  app.add_option("-o,--out", out_path, "also write the report to this file");
  app.add_flag("--compact", compact, "single-line JSON, runtime omitted");

  CycleArgs cyc;
  auto* s_cycle = app.add_subcommand("cycle", "C(f_{k,P}, A) with reconstruction");
  s_cycle->add_option("--k", cyc.k)->required();
  s_cycle->add_option("--posdef", cyc.posdef, "P as a,b,c")->required();
  s_cycle->add_option("--indef", cyc.indef, "A as a,b,c")->required();
  s_cycle->add_option("--den-bound", cyc.den_bound)->capture_default_str();
  common_flags(s_cycle, cyc);

  Theorem1Args t1;
  auto* s_t1 = app.add_subcommand("theorem1", "rational combination of cycle integrals of f_{k,P}");
  s_t1->add_option("--k", t1.k)->required();
  s_t1->add_option("--posdef", t1.posdef)->required();
  s_t1->add_option("--combo", t1.combo, "coeff:a,b,c;coeff:a,b,c")->required();
  common_flags(s_t1, t1);

  Theorem2Args t2;
  auto* s_t2 = app.add_subcommand("theorem2", "cycle integral of a Hecke translate f_{k,P}|T_lambda");
  s_t2->add_option("--k", t2.k)->required();
  s_t2->add_option("--posdef", t2.posdef)->required();
  s_t2->add_option("--indef", t2.indef)->required();
  s_t2->add_option("--lambda", t2.lambda, "l1,l2,...")->required();
  common_flags(s_t2, t2);

  LocalPolyArgs lp;
  auto* s_lp = app.add_subcommand("localpoly", "exact local polynomial at a CM point");
  s_lp->add_option("--k", lp.k)->required();
  s_lp->add_option("--indef", lp.indef)->required();
  s_lp->add_option("--posdef", lp.posdef, "tau is the CM point of this form")->required();
  common_flags(s_lp, lp);

  ZetaArgs zt;
  auto* s_zeta = app.add_subcommand("zeta", "D^{k-1/2}(zeta_A(k) + (-1)^k zeta_{-A}(k)) as a rational");
  s_zeta->add_option("--k", zt.k)->required();
  s_zeta->add_option("--indef", zt.indef)->required();
  s_zeta->add_option("--cutoff", zt.cutoff)->capture_default_str();
  s_zeta->add_flag("--cross-check", zt.cross_check, "compare with the Eisenstein cycle integral");
  common_flags(s_zeta, zt);

  RelationArgs rel;
  auto* s_rel = app.add_subcommand("relation", "relations for S_{2k}");
  s_rel->add_option("--k", rel.k)->capture_default_str();
  s_rel->add_option("--support", rel.support, "support bound, 0 = smallest that works")->capture_default_str();
  s_rel->add_option("--level", rel.level)->capture_default_str();

  TwistedArgs tw;
  auto* s_tw = app.add_subcommand("twisted", "cycle integral of a combination of twisted traces f_{k,Delta,delta}");
  s_tw->add_option("--k", tw.k)->required();
  s_tw->add_option("--terms", tw.terms, "coeff:Delta,delta;...")->required();
  s_tw->add_option("--indef", tw.indef)->required();
  s_tw->add_option("--den-bound", tw.den_bound)->capture_default_str();
  common_flags(s_tw, tw);

  std::string suite = "all", report_path;
  auto* s_ver = app.add_subcommand("verify", "run the acceptance suite");
  s_ver->add_option("--suite", suite, "paper-tables, properties or all")->capture_default_str();
  s_ver->add_option("--report", report_path, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Cache cache = Cache::from_env();
  install_zeta_cache(cache);

  try {
    if (s_ver->parsed()) return cmd_verify(suite, report_path, std::cout);
    Report r;
    if (s_cycle->parsed()) r = cmd_cycle(cyc);
    else if (s_t1->parsed()) r = cmd_theorem1(t1);
    else if (s_t2->parsed()) r = cmd_theorem2(t2);
    else if (s_lp->parsed()) r = cmd_localpoly(lp);
    else if (s_zeta->parsed()) r = cmd_zeta(zt);
    else if (s_rel->parsed()) r = cmd_relation(rel, cache);
    else r = cmd_twisted(tw);
    std::string text = r.to_json(!compact, compact ? -1 : 2);
    std::cout << text << "\n";
    if (!out_path.empty()) {
      std::ofstream f(out_path);
      if (!f) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 1;
      }
      f << text << "\n";
    }
    return 0;
  } catch (const std::invalid_argument& e) {  // UsageError included
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
