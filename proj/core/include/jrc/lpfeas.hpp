#pragma once

#include <optional>
#include <vector>

namespace jrc {

// Rows a.x <= b.
struct LinearSystem {
  int dimension = 0;
  std::vector<std::vector<double>> coefficients;
  std::vector<double> rhs;
};

// One row per consecutive pair of the window: |x - w[i+1]|^2 <= |x - w[i]|^2,
// i.e. 2 (w[i] - w[i+1]).x <= |w[i]|^2 - |w[i+1]|^2. Needs >= 2 points.
LinearSystem linearize_window(const std::vector<std::vector<double>>& window);

struct FeasibilityResult {
  bool feasible = false;
  std::vector<double> witness;  // empty when infeasible
};

// Phase-1 simplex with Bland's rule over free variables. Rows are
// normalized to unit infinity norm; a zero row with rhs >= -1e-12 is
// dropped and a zero row with a more negative rhs is infeasible.
FeasibilityResult is_feasible(const LinearSystem& system, double tolerance = 1e-9);

}  // namespace jrc
