// Runs the ten acceptance criteria, one PASS/FAIL line each.
#include <cstdlib>
#include <iostream>
#include <string>

#include "locaut/selftest.hpp"

int main(int argc, char** argv) {
  locaut::SelftestOptions opts;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--seed" && i + 1 < argc) opts.seed = std::strtoull(argv[++i], nullptr, 10);
    else opts.only.push_back(std::atoi(a.c_str()));
  }
  int failed = 0;
  locaut::run_selftest(opts, [&](const locaut::CriterionResult& r) {
    std::cout << locaut::format_result(r) << std::endl;
    if (!r.pass) ++failed;
  });
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << std::endl;
  return failed == 0 ? 0 : 1;
}
