#pragma once

#include <iosfwd>

namespace apexforge::cli {

/// Entry point of the `apexforge` binary. Exit codes: 0 success,
/// 1 verification failure, 2 invalid input, 3 budget exhausted.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace apexforge::cli
