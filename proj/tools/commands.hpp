#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace labsolve::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kRuntime = 2 };

/// Entry point shared by the binary and the tests. `args` excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const EnvLookup& env = process_environment());

}  // namespace labsolve::cli
