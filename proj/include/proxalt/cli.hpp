#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace proxalt {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitRuntime = 2, kExitVerifyFailed = 3 };

/// Entry point of the `proxalt` tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// argv form, writing to the standard streams.
int run_cli(int argc, const char* const* argv);

}  // namespace proxalt
