#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace areawalk::cli {

/// Exit codes: 0 all checks pass, 1 verification failure, 2 usage or I/O error.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsageError = 2;

/// Runs one command line (without the program name). Results go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace areawalk::cli
