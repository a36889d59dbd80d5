// Verification suite: one pass/fail line per criterion, nonzero exit on any
// failure. The same pipeline backs the CLI's `repro` subcommand.

#include <iostream>

#include "sepsys/repro.hpp"

int main() {
  const uint64_t seed = 20260801;
  auto results = sepsys::repro::run_all(seed, &std::cout);
  int failures = 0;
  for (const auto& r : results) failures += r.passed ? 0 : 1;
  std::cout << results.size() - failures << "/" << results.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
