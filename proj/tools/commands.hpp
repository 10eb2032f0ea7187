#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace umfb::cli
{

enum ExitCode : int {
    Ok = 0,
    Mismatch = 1,
    Usage = 2,
    ResourceCap = 3,
};

// Runs one command line (args excludes the program name). Normal output goes
// to `out`, diagnostics and warnings to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace umfb::cli
