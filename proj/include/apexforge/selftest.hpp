#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace apexforge::selftest {

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
};

/// Fault hooks exercised by the negative-control tests.
struct Faults {
  bool flip_hilbert_verdict = false;
};

/// Reduced-size invariant suites for every module. Prints one line per
/// suite to `out`.
std::vector<SuiteResult> run_all(std::ostream& out, const Faults& faults = {});

}  // namespace apexforge::selftest
