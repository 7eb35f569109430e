#pragma once

#include <cstdint>

#include "rfed/problems/problem.hpp"

namespace rfed {

// Brockett cost on St(p, d):
//   f(X; D_i) = (1/N) sum_j trace(X^T A_ij X H),  H = diag(mu_1, ..., mu_p).
class MbcfstiProblem final : public FederatedProblem {
 public:
  MbcfstiProblem(std::vector<std::vector<Matrix>> agent_samples, Vector h_diagonal);

  ProblemKind kind() const override { return ProblemKind::kMbcfsti; }
  double batch_cost(const Point& x, Index agent, std::span<const Index> samples) const override;
  Tangent batch_gradient(const Point& x, Index agent, std::span<const Index> samples) const override;
  // Eigenvectors of the p smallest eigenvalues of the mean A, ascending, so the
  // largest weight in H meets the smallest eigenvalue.
  std::optional<Point> reference_optimum() const override;

  const std::vector<std::vector<Matrix>>& agent_samples() const { return samples_; }
  const Vector& h_diagonal() const { return h_; }
  Matrix mean_matrix() const;
  // sum_i h_i lambda_i over the p smallest eigenvalues of the mean A (ascending)
  // and the H weights in their stored order.
  double optimal_cost() const;

 private:
  std::vector<std::vector<Matrix>> samples_;
  Vector h_;
};

// A_ij = B + B^T with B standard normal; H = diag(p, p-1, ..., 1).
MbcfstiProblem make_mbcfsti(Index d, Index p, Index num_agents, Index samples_per_agent,
                            std::uint64_t seed);

}  // namespace rfed
