#pragma once

#include "tclab/parallel.hpp"

#include <string>
#include <vector>

namespace tclab {

struct CliResult {
  int exit_code = 0;     // 0 checks pass, 1 mathematical check failed, 2 invalid input
  std::string output;    // JSON (or CSV) written to stdout
  std::string log;       // human notes written to stderr (timings excluded from output)
};

/// Dispatch a full command line (without argv[0]).  Never throws; errors are
/// encoded in the exit code and output.
CliResult dispatch(const std::vector<std::string>& args);

}  // namespace tclab
