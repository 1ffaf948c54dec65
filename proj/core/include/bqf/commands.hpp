#pragma once

#include "bqf/cache.hpp"
#include "bqf/qforms.hpp"
#include "bqf/report.hpp"

#include <stdexcept>
#include <string>

namespace bqf {

// bad flags or malformed input; the tool maps it to exit code 2
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CommonArgs {
  unsigned bits = 128;
  Int level = 1;
};

struct CycleArgs : CommonArgs {
  int k = 2;
  std::string posdef;             // "a,b,c"
  std::string indef;
  std::string den_bound = "100000";
};

struct Theorem1Args : CommonArgs {
  int k = 2;
  std::string posdef;
  std::string combo;  // "c:a,b,c;c:a,b,c"
};

struct Theorem2Args : CommonArgs {
  int k = 2;
  std::string posdef;
  std::string indef;
  std::string lambda;  // "24,1"
};

struct LocalPolyArgs : CommonArgs {
  int k = 2;
  std::string indef;
  std::string posdef;  // tau = its CM point
};

struct ZetaArgs : CommonArgs {
  int k = 2;
  std::string indef;
  Int cutoff = 400000;
  bool cross_check = false;
};

struct RelationArgs : CommonArgs {
  int k = 6;
  int support = 0;  // 0: smallest bound that admits a relation
};

struct TwistedArgs : CommonArgs {
  int k = 2;
  std::string terms;  // "c:Delta,delta;..." e.g. "1:5,-3;-120:1,-3"
  std::string indef;
  std::string den_bound = "100000";
};

Report cmd_cycle(const CycleArgs& a);
Report cmd_theorem1(const Theorem1Args& a);
Report cmd_theorem2(const Theorem2Args& a);
Report cmd_localpoly(const LocalPolyArgs& a);
Report cmd_zeta(const ZetaArgs& a);
Report cmd_relation(const RelationArgs& a, const Cache& cache);
Report cmd_twisted(const TwistedArgs& a);

// input helpers shared with the tool; throw UsageError
QForm parse_form_arg(const std::string& s, Int level, const char* what);
BigInt parse_bigint_arg(const std::string& s, const char* what);

}  // namespace bqf
