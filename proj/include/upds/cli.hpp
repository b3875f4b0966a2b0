#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace upds {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitTrue = 0,    // safe, member, reachable
    kExitFalse = 1,   // unsafe, not a member
    kExitUnknown = 2,
    kExitUsage = 3,   // bad arguments or malformed input
    kExitResource = 4 // a search budget ran out
};

/// Runs the tool; args[0] is the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace upds
