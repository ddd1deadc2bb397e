#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rtf {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double budget_seconds = 0;
};

// Criteria whose failure is understood and documented; the suite still
// reports them as failing.
bool is_known_discrepancy(int id);

// Runs the numbered acceptance criteria (all when `which` is empty).
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const std::vector<int>& which = {});
std::string format_line(const CriterionResult& r);

}  // namespace rtf
