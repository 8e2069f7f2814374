#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace depclust {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitBadInput = 2,
    kExitDegenerate = 3,
    kExitBadSpec = 4,
};

/// Runs `depclust <subcommand> ...`; args excludes the program name.
/// Results go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace depclust
