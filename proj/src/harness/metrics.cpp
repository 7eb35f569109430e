#include "rfed/harness/metrics.hpp"

#include <cmath>

#include "rfed/core/errors.hpp"
#include "rfed/manifolds/grassmann.hpp"
#include "rfed/problems/ridge.hpp"

namespace rfed {

double nmse(std::span<const double> pred, std::span<const double> truth) {
  if (pred.size() != truth.size()) throw ParameterError("nmse: size mismatch");
  if (truth.size() < 2) throw ParameterError("nmse: need at least two labels");
  const double n = static_cast<double>(truth.size());
  double mean = 0.0;
  for (double y : truth) mean += y;
  mean /= n;
  double var = 0.0;
  double mse = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    var += (truth[i] - mean) * (truth[i] - mean);
    mse += (pred[i] - truth[i]) * (pred[i] - truth[i]);
  }
  if (var == 0.0) throw DomainError("nmse: labels have zero variance");
  return mse / var;
}

double subspace_distance(const Matrix& u, const Matrix& u_star) {
  if (u.rows() != u_star.rows() || u.cols() != u_star.cols()) {
    throw ParameterError("subspace_distance: shape mismatch");
  }
  return principal_angles(u, u_star).norm();
}

std::optional<long> first_round_at_or_below(std::span<const double> values, double threshold) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= threshold) return static_cast<long>(i) + 1;
  }
  return std::nullopt;
}

Predictions mtfl_predictions(const MtflProblem& problem, const Matrix& u, bool held_out) {
  const auto& train = problem.agent_tasks();
  const bool use_test = held_out && problem.test_tasks().has_value();
  Predictions out;
  for (std::size_t i = 0; i < train.size(); ++i) {
    for (std::size_t j = 0; j < train[i].size(); ++j) {
      const TaskRecord& fit = train[i][j];
      const TaskRecord& eval = use_test ? (*problem.test_tasks())[i][j] : fit;
      if (eval.y.size() == 0) continue;
      const Vector w = ridge_solve(fit.X * u, fit.y, problem.lambda()).w;
      const Vector p = eval.X * (u * w);
      out.pred.insert(out.pred.end(), p.data(), p.data() + p.size());
      out.truth.insert(out.truth.end(), eval.y.data(), eval.y.data() + eval.y.size());
    }
  }
  return out;
}

double mtfl_nmse(const MtflProblem& problem, const Matrix& u, bool held_out) {
  const Predictions p = mtfl_predictions(problem, u, held_out);
  return nmse(p.pred, p.truth);
}

}  // namespace rfed
