#pragma once

#include <ostream>

namespace tightpovm::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainFailure = 1;  // not IC, not tight, not certified
inline constexpr int kIoError = 2;        // unreadable or malformed input, write failures
inline constexpr int kBadArguments = 3;   // unknown flags, invalid parameters

// Runs one command line. Results go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tightpovm::cli
