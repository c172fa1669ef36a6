/// @file selftest.hpp
/// The acceptance suite, shared by the acceptance binary and `cli selftest`.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace locaut {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct SelftestOptions {
  std::uint64_t seed = 0;
  std::vector<int> only;  // empty runs all ten
};

/// Runs the criteria in order; on_result fires as each one finishes.
std::vector<CriterionResult> run_selftest(const SelftestOptions& opts = {},
                                          const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS  3  Basis certification: ... (0.12 s)".
std::string format_result(const CriterionResult& r);

}  // namespace locaut
