#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sepsys::repro {

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string detail;  // key numbers, or the first failed assertion
  double elapsed_ms = 0;
};

// The full verification pipeline: Nordstrom-Robinson chain, rate ledger,
// Riemann-Roch engine, lemma bounds, the main intersecting-code
// construction, mutually intersecting pairs, the Reed-Solomon oracle,
// concatenation, and the evaluation-map algebra. Every tolerance is pinned
// here. Deterministic given the seed.
std::vector<CriterionResult> run_all(uint64_t seed, std::ostream* progress = nullptr);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace sepsys::repro
