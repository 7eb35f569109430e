#pragma once

#include <cstdint>

#include "rfed/problems/problem.hpp"

namespace rfed {

// Frechet mean of SPD matrices under the affine-invariant metric:
//   f(X; D_i) = (1/N) sum_j ||logm(X^{-1/2} Z_ij X^{-1/2})||_F^2.
class CfmspdProblem final : public FederatedProblem {
 public:
  explicit CfmspdProblem(std::vector<std::vector<Matrix>> agent_samples);

  ProblemKind kind() const override { return ProblemKind::kCfmspd; }
  double batch_cost(const Point& x, Index agent, std::span<const Index> samples) const override;
  // Mean of -2 X^{1/2} logm(X^{-1/2} Z X^{-1/2}) X^{1/2}.
  Tangent batch_gradient(const Point& x, Index agent, std::span<const Index> samples) const override;
  // Starts runs at the identity.
  Point initial_point(std::uint64_t seed) const override;

  const std::vector<std::vector<Matrix>>& agent_samples() const { return samples_; }
  // expm of the mean matrix log: a cheap, feasible starting point for solvers.
  Point log_euclidean_mean() const;

 private:
  std::vector<std::vector<Matrix>> samples_;
};

// Max rejections per sample when enforcing the diameter bound.
inline constexpr int kWishartMaxRejections = 10000;

// S*N draws from Wishart(I/n, n), each resampled until dist(Z, I) <= diameter,
// then split into S consecutive groups of N.
CfmspdProblem make_cfmspd(Index n, Index num_agents, Index samples_per_agent, double diameter,
                          std::uint64_t seed);

}  // namespace rfed
