#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hcurve::cli {

enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kUsage = 2,
    kNumerical = 3,
};

/// Runs one command line (without the program name). JSON goes to out,
/// diagnostics and usage text to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hcurve::cli
