#pragma once

#include <optional>
#include <string>
#include <vector>

namespace kcbs {

struct Check {
  std::string name;
  bool passed;
  double deviation;  // worst observed defect
  double tolerance;
  std::string detail;
};

// Construction checks in a fixed order: adjacent orthogonality, closure,
// Cartesian orthogonality, Gram equivalence, psi0 agreement, psi0 singles,
// psi0 pairs, measurement plans. gamma defaults to arccos(2 - sqrt5).
std::vector<Check> validate_construction(std::optional<double> gamma = std::nullopt);

// First failing check, if any.
const Check* first_failure(const std::vector<Check>& checks);

}  // namespace kcbs
