#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cqd::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kDataError = 2;

// Runs one command line (args excludes the program name). Normal output
// goes to `out`, diagnostics and logs to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cqd::cli
