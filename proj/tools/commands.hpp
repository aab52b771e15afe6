#pragma once

#include <ostream>

namespace omv::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kNumericError = 3 };

/// Entry point of the `omv` binary: subcommands stats, lcc, detect, score,
/// rank and sweep.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace omv::cli
