// Helpers shared by the two executables.
#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "locaut/io/json_io.hpp"

namespace locaut::cli {

inline io::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadArgs, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return io::parse(ss.str());
  } catch (const Error& e) {
    throw Error(ErrorCode::FileFormat, path + ": " + e.detail());
  }
}

/// The bare automorphism, or the one inside a gen-auto report.
inline io::json automorphism_part(const io::json& j) {
  if (j.is_object() && j.contains("result")) return automorphism_part(j["result"]);
  if (j.is_object() && j.contains("automorphism")) return j["automorphism"];
  return j;
}

/// A sample map, or the one inside an apply or gallery report.
inline io::json samples_part(const io::json& j) {
  if (j.is_object() && j.contains("result")) return samples_part(j["result"]);
  if (j.is_object() && j.contains("samples")) return j["samples"];
  return j;
}

}  // namespace locaut::cli
