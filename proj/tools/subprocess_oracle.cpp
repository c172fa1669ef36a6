#include "subprocess_oracle.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include "locaut/io/json_io.hpp"

namespace locaut::cli {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw Error(ErrorCode::OracleFailure, what + (errno ? std::string(": ") + std::strerror(errno) : std::string()));
}

}  // namespace

SubprocessOracle::SubprocessOracle(GroupTag group, std::string cmd) : group_(group), cmd_(std::move(cmd)) {
  // A child that exits early must surface as OracleFailure, not SIGPIPE.
  std::signal(SIGPIPE, SIG_IGN);
  int in[2], out[2];
  if (pipe(in) != 0) fail("pipe");
  if (pipe(out) != 0) {
    close(in[0]);
    close(in[1]);
    fail("pipe");
  }
  pid_ = fork();
  if (pid_ < 0) fail("fork");
  if (pid_ == 0) {
    dup2(in[0], STDIN_FILENO);
    dup2(out[1], STDOUT_FILENO);
    close(in[0]);
    close(in[1]);
    close(out[0]);
    close(out[1]);
    execl("/bin/sh", "sh", "-c", cmd_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in[0]);
  close(out[1]);
  to_child_ = in[1];
  from_child_ = out[0];
  fcntl(to_child_, F_SETFD, FD_CLOEXEC);
  fcntl(from_child_, F_SETFD, FD_CLOEXEC);
}

SubprocessOracle::~SubprocessOracle() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  if (pid_ > 0) {
    int status = 0;
    waitpid(pid_, &status, 0);
  }
}

std::string SubprocessOracle::read_line() {
  for (;;) {
    auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    char chunk[4096];
    ssize_t got = read(from_child_, chunk, sizeof chunk);
    if (got < 0 && errno == EINTR) continue;
    if (got < 0) fail("reading oracle output");
    if (got == 0) {
      errno = 0;
      fail("oracle closed its output after " + std::to_string(queries_) + " answers");
    }
    buffer_.append(chunk, static_cast<std::size_t>(got));
  }
}

ScaledMatrix SubprocessOracle::query(const AnyMatrix& a) {
  std::string line = io::to_json(a).dump() + "\n";
  std::size_t off = 0;
  while (off < line.size()) {
    ssize_t put = write(to_child_, line.data() + off, line.size() - off);
    if (put < 0 && errno == EINTR) continue;
    if (put < 0) fail("writing to oracle");
    off += static_cast<std::size_t>(put);
  }
  std::string reply = read_line();
  ++queries_;
  try {
    return io::scaled_from_json(io::parse(reply));
  } catch (const Error& e) {
    errno = 0;
    fail("bad answer to query " + std::to_string(queries_) + " (" + e.detail() + ")");
  }
}

}  // namespace locaut::cli
