// The JSON envelope every subcommand prints.
#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include "locaut/io/json_io.hpp"

namespace locaut::cli {

struct RunSettings {
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::size_t budget = 0;  // 0 = engine default
};

/// "sha256:<hex>" of the compact dump.
std::string digest(const io::json& inputs);

/// {"command", "inputs", "inputs_digest", "settings", "result", "timing"}.
/// Only "timing" varies between identical runs.
class Report {
 public:
  Report(std::string command, const RunSettings& s);
  io::json& inputs() { return inputs_; }
  io::json finish(io::json result) const;

 private:
  std::string command_;
  RunSettings settings_;
  io::json inputs_ = io::json::object();
  std::chrono::steady_clock::time_point start_;
};

}  // namespace locaut::cli
