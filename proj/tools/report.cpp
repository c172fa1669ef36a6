#include "report.hpp"

#include <openssl/evp.h>

#include <cstdio>

namespace locaut::cli {

std::string digest(const io::json& inputs) {
  const std::string text = inputs.dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return "sha256:" + hex;
}

Report::Report(std::string command, const RunSettings& s)
    : command_(std::move(command)), settings_(s), start_(std::chrono::steady_clock::now()) {}

io::json Report::finish(io::json result) const {
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  const io::json settings = {{"seed", settings_.seed}, {"tol", settings_.tol}, {"budget", settings_.budget}};
  return {{"command", command_},
          {"inputs", inputs_},
          {"inputs_digest", digest({{"command", command_}, {"inputs", inputs_}, {"settings", settings}})},
          {"settings", settings},
          {"result", std::move(result)},
          {"timing", {{"seconds", secs}}}};
}

}  // namespace locaut::cli
