#pragma once

#include <cstdint>
#include <optional>

#include "rfed/problems/problem.hpp"

namespace rfed {

// One regression task: d_ij instances with m features and their labels.
struct TaskRecord {
  Matrix X;
  Vector y;
};

// Low-dimensional multitask feature learning on Gr(r, m):
//   f(U; T_ij) = 0.5 ||X_ij U w_ij(U) - y_ij||^2,
// where w_ij(U) minimizes 0.5 ||X_ij U w - y_ij||^2 + lambda ||w||^2.
class MtflProblem final : public FederatedProblem {
 public:
  MtflProblem(std::vector<std::vector<TaskRecord>> agent_tasks, Index r, double lambda);

  ProblemKind kind() const override { return ProblemKind::kMtfl; }
  double batch_cost(const Point& x, Index agent, std::span<const Index> samples) const override;
  Tangent batch_gradient(const Point& x, Index agent, std::span<const Index> samples) const override;

  const std::vector<std::vector<TaskRecord>>& agent_tasks() const { return tasks_; }
  Index m() const { return manifold().rows(); }
  Index r() const { return manifold().cols(); }
  double lambda() const { return lambda_; }

  // Planted subspace of synthetic data, if known.
  const std::optional<Matrix>& ground_truth() const { return ground_truth_; }
  void set_ground_truth(Matrix u_star);

  // Held-out rows per task (same layout as agent_tasks), if any.
  const std::optional<std::vector<std::vector<TaskRecord>>>& test_tasks() const { return test_; }
  void set_test_tasks(std::vector<std::vector<TaskRecord>> test);

  // Single-task pieces, exposed for tests.
  double task_cost(const Matrix& u, const TaskRecord& task) const;
  Matrix task_euclidean_gradient(const Matrix& u, const TaskRecord& task) const;

 private:
  std::vector<std::vector<TaskRecord>> tasks_;
  double lambda_;
  std::optional<Matrix> ground_truth_;
  std::optional<std::vector<std::vector<TaskRecord>>> test_;
};

// Synthetic tasks: d_ij uniform in [10, 50], X_ij standard normal,
// y_ij = X_ij U* U*^T w_ij + noise with w_ij standard normal and U* a random
// point of St(r, m).
MtflProblem make_mtfl(Index m, Index r, Index num_agents, Index samples_per_agent,
                      double noise_std, double lambda, std::uint64_t seed);

}  // namespace rfed
