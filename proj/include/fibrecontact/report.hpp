#pragma once

// JSON reports behind the command-line tool.

#include <iosfwd>
#include <string>
#include <vector>

namespace fibrecontact::report {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { Success = 0, ValidationFailure = 1, UsageError = 2 };

/// Rounds to 12 significant digits.
double round12(double x);

/// Runs the command line `args` (without the program name), writing the JSON
/// report or error object to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fibrecontact::report
