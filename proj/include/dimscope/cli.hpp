#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dimscope {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitData = 3,
  kExitFit = 4,
};

/// Runs one subcommand. `args` excludes the program name. Results go to
/// files; `out` receives the headline number, `err` the diagnostics.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace dimscope
