#pragma once

#include <string>
#include <vector>

namespace vhed::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
  double seconds = 0.0;
};

// Run the acceptance criteria (all nine when ids is empty). Expensive sweeps
// are shared between criteria within one run.
std::vector<CriterionResult> run(const std::vector<int>& ids, int workers, bool verbose);

// One line per criterion; returns 0 when everything passed, 3 otherwise.
int report(const std::vector<CriterionResult>& results);

}  // namespace vhed::acceptance
