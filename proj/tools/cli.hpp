#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace isg::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kDomain = 3,
    kSizeGuard = 4,
    kIo = 5,
};

// Runs one invocation. `args` excludes the program name. "-" as an input path
// reads from `in`. Results go to `out`; failures are reported as a single JSON
// object on `err`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

// Every command path (e.g. {"pne", "verify"}) with the long flags it accepts
// itself, in declaration order. The empty path holds the global flags.
std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> command_flags();

}  // namespace isg::cli
