// locaut-oracle: answers the subprocess protocol for a stored automorphism.
// Reads one matrix JSON per line and writes phi(A) per line. Requests it
// cannot map get an error JSON line instead.
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "common.hpp"

using namespace locaut;

int main(int argc, char** argv) {
  CLI::App app{"Answer matrix queries on stdin with the images under a stored automorphism"};
  std::string auto_file;
  long fail_after = -1;
  app.add_option("automorphism", auto_file, "Automorphism JSON (or a gen-auto report)")->required();
  app.add_option("--fail-after", fail_after, "Exit after this many answers");
  CLI11_PARSE(app, argc, argv);

  try {
    Automorphism phi = io::automorphism_from_json(cli::automorphism_part(cli::read_json_file(auto_file)));
    std::string line;
    long answered = 0;
    while (std::getline(std::cin, line)) {
      if (line.empty()) continue;
      if (fail_after >= 0 && answered >= fail_after) return 0;
      try {
        std::cout << io::to_json(phi.apply_scaled(io::matrix_from_json(io::parse(line)))).dump() << '\n';
      } catch (const Error& e) {
        std::cout << io::error_json(e).dump() << '\n';
      }
      std::cout.flush();
      ++answered;
    }
  } catch (const Error& e) {
    std::cerr << io::error_json(e).dump() << '\n';
    return 1;
  }
  return 0;
}
