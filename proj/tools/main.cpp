#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace cavity::cli;
  RunConfig config;
  std::string early;
  try {
    config = parse_args(argc, argv, &early);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nrun 'cavity-spectra --help' for usage\n";
    return kExitUsage;
  }
  if (!early.empty()) {
    std::cout << early;
    if (early.back() != '\n') std::cout << '\n';
    return kExitOk;
  }
  return run(config, std::cout, std::cerr);
}
