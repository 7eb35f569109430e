#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rfed/core/types.hpp"
#include "rfed/problems/mtfl.hpp"

namespace rfed {

// MSE(pred, truth) / population variance of truth. Throws DomainError when the
// truth has zero variance.
double nmse(std::span<const double> pred, std::span<const double> truth);

// 2-norm of the principal angles between span(u) and span(u_star).
double subspace_distance(const Matrix& u, const Matrix& u_star);

// First 1-based position whose value is <= threshold (NaN never qualifies).
std::optional<long> first_round_at_or_below(std::span<const double> values, double threshold);

struct Predictions {
  std::vector<double> pred;
  std::vector<double> truth;
};

// Per task: fit the ridge weights on the training rows with features X U, then
// predict the held-out rows (or the training rows when `held_out` is false or
// there is no test split).
Predictions mtfl_predictions(const MtflProblem& problem, const Matrix& u, bool held_out = true);
double mtfl_nmse(const MtflProblem& problem, const Matrix& u, bool held_out = true);

}  // namespace rfed
