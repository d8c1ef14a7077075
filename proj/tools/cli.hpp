#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace knnsum::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kResolutionError = 2,
};

// Entry point of the `knnsum` tool: build | neighbors | summarize.
// Results go to `out` (or --out), diagnostics to `err`.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace knnsum::cli
