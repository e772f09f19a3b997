#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hxplain {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitInput = 3,
    kExitBudget = 4,
    kExitInternal = 5,
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hxplain
