#pragma once

#include <ostream>

namespace fermi::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kOk = 0,
    kVerifyFailed = 1,
    kDomain = 2,
    kAccuracy = 3,
    kUsage = 64,
};

/// Entry point shared by the executable and the tests. Results go to `out`
/// (or --output), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fermi::cli
