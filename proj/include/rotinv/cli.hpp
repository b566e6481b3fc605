#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rotinv::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFalse = 1;     // verdict false or suite failure
inline constexpr int kExitInput = 2;     // parse, domain or precondition error
inline constexpr int kExitInternal = 3;  // failed internal consistency check

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rotinv::cli
