#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace bqf {

struct CaseResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // one "label: observed vs expected" entry per check, ';'-separated
  double runtime_ms = 0;
};

struct Criterion {
  int id;
  std::string name;
  std::string suite;  // "paper-tables" or "properties"
  std::function<CaseResult()> run;
};

const std::vector<Criterion>& criteria();

// ids for "paper-tables", "properties" or "all"; UsageError otherwise
std::vector<int> suite_ids(const std::string& suite);

CaseResult run_criterion(int id);

// runs every criterion of the suite; on_case is called after each one
std::vector<CaseResult> run_suite(const std::string& suite,
                                  const std::function<void(const CaseResult&)>& on_case = {});

std::string suite_report_json(const std::string& suite, const std::vector<CaseResult>& results,
                              bool include_runtime = true);

// prints one line per criterion to out, writes the JSON report if a path is
// given; 0 all pass, 1 some failure, 2 unknown suite
int cmd_verify(const std::string& suite, const std::string& report_path, std::ostream& out);

}  // namespace bqf
