// Acceptance suites: seeded statistical and exhaustive checks with pinned
// thresholds, one result line per criterion.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sws {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;   // measured numbers and the thresholds they met
  double seconds = 0.0;
};

// suite: distinct | hh | counter | histogram | all.
std::vector<CriterionResult> run_acceptance(const std::string& suite, std::uint64_t master_seed);

// "[PASS] 07 counter-exhaustive-halfwidth  <detail>  (1.2s)"
std::string format_result(const CriterionResult& r);

}  // namespace sws
