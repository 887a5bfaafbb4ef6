#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mgfield {

/// One finding of a structural check: a short kind tag, the node indices
/// involved, and an optional numeric value (entry, deviation, count).
struct Violation {
  std::string kind;
  std::vector<int> nodes;
  double value = 0.0;
  std::string detail;
};

/// Uniform result of every structural check. `params` and `tolerances`
/// record the inputs the verdict depends on; `note` carries a verdict
/// qualifier such as a failed precondition.
struct CheckReport {
  std::string check;
  bool pass = false;
  std::vector<Violation> violations;
  std::vector<std::pair<std::string, double>> params;
  std::vector<std::pair<std::string, double>> tolerances;
  std::string note;
};

}  // namespace mgfield
