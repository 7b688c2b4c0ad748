#pragma once

#include <iosfwd>

namespace satr {

// Exit codes shared by every subcommand; check uses 0/1.
enum ExitCode {
    kExitYes = 0,
    kExitRejected = 1,
    kExitNo = 10,
    kExitLimit = 20,
    kExitMalformed = 30,
    kExitInternal = 40,
};

// Subcommands: solve, check, oracle, gen-hardness, gen-random, stats.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace satr
