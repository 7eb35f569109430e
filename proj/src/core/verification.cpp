#include "rfed/core/verification.hpp"

#include <algorithm>
#include <cmath>

#include "rfed/core/errors.hpp"

namespace rfed {

std::vector<double> check_retraction_first_order(const Manifold& manifold, const Point& x,
                                                 const Tangent& v, std::span<const double> steps,
                                                 RetractionMode mode) {
  const double scale = std::max(1.0, v.value.norm());
  if (manifold.tangent_error(x, v.value) > kFeasibilityTol * scale) {
    throw ContractError("check_retraction_first_order: v is not tangent at x");
  }
  std::vector<double> errors;
  errors.reserve(steps.size());
  for (double h : steps) {
    if (!(h > 0.0)) throw ParameterError("check_retraction_first_order: steps must be positive");
    if (v.value.norm() == 0.0) {
      errors.push_back(0.0);
      continue;
    }
    const Point y = manifold.move(x, h * Tangent{v.value}, mode);
    errors.push_back(((y.value - x.value) / h - v.value).norm());
  }
  return errors;
}

double check_transport_isometry(const Manifold& manifold, const Point& x, const Point& y,
                                const Tangent& v) {
  const double before = manifold.norm(x, v);
  if (before == 0.0) return 0.0;
  const double after = manifold.norm(y, manifold.transport(x, y, v));
  return std::abs(after - before) / before;
}

std::vector<Tangent> orthonormal_tangent_basis(const Manifold& manifold, const Point& x) {
  const Index rows = manifold.rows();
  const Index cols = manifold.cols();
  const Index dim = manifold.dimension();

  std::vector<Tangent> candidates;
  candidates.reserve(static_cast<std::size_t>(rows * cols));
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      Matrix e = Matrix::Zero(rows, cols);
      e(i, j) = 1.0;
      candidates.push_back(manifold.project(x, e));
    }
  }
  std::vector<double> norms(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) norms[c] = manifold.norm(x, candidates[c]);

  // Residuals below this fraction of the largest projected norm are treated as
  // linearly dependent.
  const double cutoff = 1e-8 * *std::max_element(norms.begin(), norms.end());

  std::vector<Tangent> basis;
  basis.reserve(static_cast<std::size_t>(dim));
  std::vector<bool> used(candidates.size(), false);
  while (static_cast<Index>(basis.size()) < dim) {
    std::size_t best = candidates.size();
    double best_norm = cutoff;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (!used[c] && norms[c] > best_norm) {
        best = c;
        best_norm = norms[c];
      }
    }
    if (best == candidates.size()) break;
    used[best] = true;
    Tangent b = (1.0 / best_norm) * candidates[best];
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (used[c]) continue;
      candidates[c] = candidates[c] - manifold.inner(x, b, candidates[c]) * Tangent{b.value};
      norms[c] = manifold.norm(x, candidates[c]);
    }
    for (Index k = 0; k < b.value.size(); ++k) {
      const double c = b.value.reshaped()(k);
      if (std::abs(c) > 1e-12) {
        if (c < 0.0) b.value = -b.value;
        break;
      }
    }
    basis.push_back(std::move(b));
  }
  if (static_cast<Index>(basis.size()) != dim) {
    throw DomainError(manifold.name() + ": tangent basis construction lost rank");
  }
  return basis;
}

Tangent finite_difference_gradient(const std::function<double(const Point&)>& objective,
                                   const Manifold& manifold, const Point& x, double h) {
  if (!(h > 0.0)) throw ParameterError("finite_difference_gradient: h must be positive");
  Tangent grad = manifold.zero_tangent(x);
  for (const Tangent& b : orthonormal_tangent_basis(manifold, x)) {
    const double plus = objective(manifold.retract(x, h * Tangent{b.value}));
    const double minus = objective(manifold.retract(x, -h * Tangent{b.value}));
    grad.value += ((plus - minus) / (2.0 * h)) * b.value;
  }
  return grad;
}

}  // namespace rfed
