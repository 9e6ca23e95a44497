#pragma once

#include <ostream>

namespace wecg::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kIo = 3,
  kCorrupt = 4,
};

// Entry point of the `wecg` tool; output goes to the given streams so tests
// can run commands in-process.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wecg::cli
