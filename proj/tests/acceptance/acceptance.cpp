// One line per acceptance criterion. With arguments, only the listed ids run.
#include "bqf/cache.hpp"
#include "bqf/verify.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  using namespace bqf;
  install_zeta_cache(Cache::disabled());
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) ids = suite_ids("all");
  int failed = 0;
  for (int id : ids) {
    auto r = run_criterion(id);
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name << " ("
              << static_cast<long>(r.runtime_ms) << " ms)\n";
    std::cout << "    " << r.detail << "\n";
    failed += !r.pass;
    std::cout.flush();
  }
  std::cout << (ids.size() - failed) << "/" << ids.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
