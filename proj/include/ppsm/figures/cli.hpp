#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ppsm::figures {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,      ///< parse or validation failure
    kExitNumerical = 3,  ///< numerical failure
    kExitProtocol = 4,   ///< adaptive protocol aborted (region miss)
};

/// Entry point behind the `ppsm` executable. `args` excludes the program
/// name. CSV goes to --out (default `out`); reports and diagnostics go to
/// `err`, except that reports go to `out` when --out names a file.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ppsm::figures
