#include "tclab/cli.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto start = std::chrono::steady_clock::now();
  tclab::CliResult result = tclab::dispatch(args);
  auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  std::fputs(result.output.c_str(), stdout);
  if (!result.log.empty()) std::fputs(result.log.c_str(), stderr);
  // Timing goes to stderr so stdout stays byte-identical across runs.
  std::fprintf(stderr, "wall_ms=%lld\n", static_cast<long long>(elapsed.count()));
  return result.exit_code;
}
