// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <iostream>

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto report = njust::cli::run(args);
  std::cout << report.out;
  std::cerr << report.err;
  return report.exit_code;
}
