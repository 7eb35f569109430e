#pragma once

#include <cstdint>

#include "rfed/problems/problem.hpp"

namespace rfed {

// Principal eigenvector on the sphere:
//   f(x; D_i) = -(1/N) sum_j (z_ij^T x)^2,  x in S^d.
// Agent i holds the rows of Z_i (N x (d+1)).
class CpesphProblem final : public FederatedProblem {
 public:
  explicit CpesphProblem(std::vector<Matrix> agent_rows);

  ProblemKind kind() const override { return ProblemKind::kCpesph; }
  double batch_cost(const Point& x, Index agent, std::span<const Index> samples) const override;
  Tangent batch_gradient(const Point& x, Index agent, std::span<const Index> samples) const override;
  // Top eigenvector of sum_i Z_i^T Z_i, signed so its largest entry is positive.
  std::optional<Point> reference_optimum() const override;

  const std::vector<Matrix>& agent_rows() const { return rows_; }
  Index d() const { return manifold().dimension(); }
  // (1/(S N)) sum_ij z_ij z_ij^T
  Matrix mean_covariance() const;

 private:
  std::vector<Matrix> rows_;
};

// Synthetic data: Z_i = U_i Sigma_i V_i with
//   Sigma_i = diag(1, 1 - 1.1 v, 1 - 1.2 v, 1 - 1.3 v, 1 - 1.4 v, |y_1|/(d+1), ...),
// U_i, V_i orthonormal factors of standard normal matrices. When N < d+1 the
// factors are truncated to rank N. With `sqrt_n_rows` every Z_i is scaled by
// sqrt(N), giving each local covariance the spectrum Sigma_i^2 instead of Sigma_i^2 / N.
CpesphProblem make_cpesph(Index d, Index num_agents, Index samples_per_agent, double eigengap,
                          std::uint64_t seed, bool sqrt_n_rows = false);

}  // namespace rfed
