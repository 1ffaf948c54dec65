#include <doctest.h>

#include "bqf/cache.hpp"
#include "bqf/commands.hpp"
#include "bqf/report.hpp"
#include "bqf/verify.hpp"
#include "bqf/zeta.hpp"

#include <filesystem>
#include <sstream>
#include <thread>

#include <unistd.h>

using namespace bqf;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  auto d = fs::temp_directory_path() / ("bqf-test-" + tag + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("report json roundtrip") {
  PrecisionScope s(128);
  Report r;
  r.command = "cycle";
  r.add_input("k", "2");
  r.add_input("indef", "1,1,-1");
  r.value = Complex(Real(1) / 3, Real("-2.5e-40"));
  r.err_est = Real("1e-30");
  r.rational = Rational(-7, 12);
  r.pv_used = true;
  r.precision_bits = 128;
  r.runtime_ms = 12.5;
  r.add_extra("note", "x");
  auto text = r.to_json();
  auto back = Report::from_json(text);
  CHECK(back.command == "cycle");
  CHECK(back.inputs == r.inputs);
  REQUIRE(back.value);
  CHECK(back.value->re == r.value->re);  // bit-exact
  CHECK(back.value->im == r.value->im);
  CHECK(*back.rational == Rational(-7, 12));
  CHECK(back.pv_used);
  CHECK(back.to_json() == text);
  CHECK(text.find("\"-7/12\"") != std::string::npos);
  CHECK(r.to_json(false).find("runtime_ms") == std::string::npos);
  Report empty;
  empty.command = "relation";
  CHECK(Report::from_json(empty.to_json()).value == std::nullopt);
}

TEST_CASE("cache put/get, atomic writes, disabled cache") {
  auto dir = fresh_dir("cache");
  Cache c(dir);
  CHECK(!c.get(CacheKind::zeta, "k"));
  c.put(CacheKind::zeta, "k", "payload-1");
  CHECK(*c.get(CacheKind::zeta, "k") == "payload-1");
  CHECK(!c.get(CacheKind::qseries, "k"));  // kinds are separate
  c.put(CacheKind::zeta, "k", "payload-2");
  CHECK(*c.get(CacheKind::zeta, "k") == "payload-2");

  // concurrent writers of the same key never leave a torn file behind
  std::vector<std::thread> ts;
  for (int i = 0; i < 4; ++i)
    ts.emplace_back([&, i] {
      for (int j = 0; j < 25; ++j) c.put(CacheKind::expsum, "shared", std::string(2000, char('a' + i)));
    });
  for (auto& t : ts) t.join();
  auto v = c.get(CacheKind::expsum, "shared");
  REQUIRE(v);
  CHECK(v->size() == 2000);
  CHECK(std::all_of(v->begin(), v->end(), [&](char ch) { return ch == v->front(); }));
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) CHECK(e.path().extension() == ".json");  // no stray temp files

  auto off = Cache::disabled();
  off.put(CacheKind::zeta, "k", "x");
  CHECK(!off.get(CacheKind::zeta, "k"));
  fs::remove_all(dir);
}

TEST_CASE("zeta results are identical with cold and warm cache") {
  auto dir = fresh_dir("zeta");
  install_zeta_cache(Cache(dir));
  ZetaArgs a;
  a.k = 2;
  a.indef = "1,0,-2";
  a.cutoff = 20000;
  auto cold = cmd_zeta(a).to_json(false);
  auto warm = cmd_zeta(a).to_json(false);
  CHECK(cold == warm);
  CHECK(fs::exists(dir / "zeta"));
  install_zeta_cache(Cache::disabled());
  auto none = cmd_zeta(a).to_json(false);
  CHECK(none == cold);
  fs::remove_all(dir);
}

TEST_CASE("cycle command") {
  CycleArgs a;
  a.k = 2;
  a.posdef = "1,1,1";
  a.indef = "1,1,-1";
  auto r = cmd_cycle(a);
  REQUIRE(r.rational);
  CHECK(*r.rational == 4);
  CHECK(r.inputs[1].second == "1,1,1");
  // deterministic apart from the runtime
  CHECK(cmd_cycle(a).to_json(false) == r.to_json(false));
}

TEST_CASE("argument errors") {
  CHECK_THROWS_AS(parse_form_arg("1,2", 1, "--indef"), UsageError);
  CHECK_THROWS_AS(parse_form_arg("1,x,3", 1, "--indef"), UsageError);
  CHECK_THROWS_AS(parse_form_arg("3,1,1", 2, "--indef"), UsageError);
  CHECK(parse_form_arg(" 1, 1, -1", 1, "--indef") == QForm::unchecked(1, 1, -1));
  CHECK_THROWS_AS(parse_bigint_arg("-5", "--den-bound"), UsageError);
  CycleArgs a;
  a.k = 2;
  a.posdef = "1,1,-1";  // not definite
  a.indef = "1,1,-1";
  CHECK_THROWS_AS(cmd_cycle(a), UsageError);
  a.posdef = "1,1,1";
  a.indef = "1,2,1";  // square discriminant
  CHECK_THROWS_AS(cmd_cycle(a), UsageError);
  a.indef = "1,1,-1";
  a.k = 0;
  CHECK_THROWS_AS(cmd_cycle(a), UsageError);
  Theorem2Args t;
  t.k = 6;
  t.posdef = "1,1,1";
  t.indef = "1,1,-1";
  t.lambda = "24,x";
  CHECK_THROWS_AS(cmd_theorem2(t), UsageError);
}

TEST_CASE("verify suites") {
  CHECK(suite_ids("paper-tables") == std::vector<int>{1, 2, 3, 4, 5, 6, 7});
  CHECK(suite_ids("properties").size() == 6);
  CHECK(suite_ids("all").size() == 13);
  CHECK_THROWS_AS(suite_ids("nope"), UsageError);
  std::ostringstream os;
  CHECK(cmd_verify("nope", "", os) == 2);
  auto r = run_criterion(9);
  CHECK(r.pass);
  auto j = suite_report_json("properties", {r}, false);
  CHECK(j.find("\"schema_version\": 1") != std::string::npos);
  CHECK(j.find("runtime_ms") == std::string::npos);
}
