#pragma once

#include <cstdint>
#include <iosfwd>

namespace polyflow {

struct SelftestOptions {
  // Random fields per cycle size and identity.
  int trials = 100;
  std::uint64_t seed = 0x7061726973ULL;
  // Test hook: offset added to the first tap of a selftest-local kernel
  // realisation of I. Nonzero values must make the D.I=pi0 suite fail; that
  // failing is what the hook verifies.
  double kernel_corruption = 0.0;
};

// Runs every operator and gradient property suite at N = 4, 5, 6, 7, 12 and
// prints one line per suite. Returns 0 when all pass, 1 otherwise.
int run_selftest(const SelftestOptions& options, std::ostream& out);

}  // namespace polyflow
