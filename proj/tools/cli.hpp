// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace njust::cli {

struct RunReport {
  int exit_code = 0;
  std::string out;
  std::string err;
};

// args excludes the program name.
RunReport run(const std::vector<std::string> &args);

} // namespace njust::cli
