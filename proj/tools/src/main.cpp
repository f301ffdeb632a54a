#include <cstdlib>
#include <exception>
#include <iostream>

#include "nodal/parallel.hpp"
#include "nodal_cli/args.hpp"

int main(int argc, char** argv) {
  const char* env = std::getenv("NODAL_LAB_THREADS");
  const auto parsed = nodal::cli::parse_args({argv, argv + argc}, env ? env : "");
  if (!parsed.should_run) {
    (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message;
    return parsed.exit_code;
  }
  try {
    if (parsed.config.threads > 0) nodal::set_default_threads(parsed.config.threads);
    return nodal::run(parsed.config, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
