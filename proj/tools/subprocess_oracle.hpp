// Oracle backed by a child process: one matrix JSON per line on its stdin,
// one image JSON per line back on its stdout.
#pragma once

#include <string>
#include <sys/types.h>

#include "locaut/recover/oracle.hpp"

namespace locaut::cli {

class SubprocessOracle : public Oracle {
 public:
  /// Runs cmd through /bin/sh -c. Throws OracleFailure if it cannot start.
  SubprocessOracle(GroupTag group, std::string cmd);
  ~SubprocessOracle() override;
  SubprocessOracle(const SubprocessOracle&) = delete;
  SubprocessOracle& operator=(const SubprocessOracle&) = delete;

  const GroupTag& group() const override { return group_; }
  ScaledMatrix query(const AnyMatrix& a) override;
  bool pure() const override { return false; }  // queries go down one pipe in order
  std::string describe() const override { return "subprocess: " + cmd_; }
  std::size_t queries() const { return queries_; }

 private:
  std::string read_line();

  GroupTag group_;
  std::string cmd_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  std::size_t queries_ = 0;
};

}  // namespace locaut::cli
