#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace flatlab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // deterministic: no timings
};

/// Runs criteria 1-12. Randomized sweeps draw from `seed`.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 0);

}  // namespace flatlab
