#pragma once

#include "rfed/core/types.hpp"

namespace rfed {

struct RidgeSolution {
  Vector w;
  // Set when lambda = 0 and Z^T Z was numerically singular.
  bool used_pseudo_inverse = false;
};

// Minimizer of 0.5 ||Z w - y||^2 + lambda ||w||^2, i.e. (Z^T Z + 2 lambda I)^-1 Z^T y.
// A singular unregularized system falls back to the minimum-norm least-squares solution.
RidgeSolution ridge_solve(const Matrix& z, const Vector& y, double lambda);

}  // namespace rfed
