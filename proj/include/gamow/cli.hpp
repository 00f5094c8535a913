#pragma once

#include <string>
#include <vector>

namespace gamow {

/// Entry point shared by the binary and the tests. Subcommands: front,
/// norm, poles, tau, validate. Returns the process exit code: 0 success,
/// 1 validation failure, 2 config/parse error, 3 numerical non-convergence.
int run_cli(const std::vector<std::string>& args);

}  // namespace gamow
