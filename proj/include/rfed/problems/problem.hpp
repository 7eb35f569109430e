#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rfed/core/manifold.hpp"

namespace rfed {

enum class ProblemKind { kCpesph, kCfmspd, kMbcfsti, kMtfl, kCustom };

const char* to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(const std::string& name);

// Finite-sum objective F(x) = (1/S) sum_i f(x; D_i), f(x; D_i) = (1/N) sum_j f(x; z_ij),
// split over S agents that each hold N samples. Data is immutable after
// construction, so every method may be called concurrently.
class FederatedProblem {
 public:
  FederatedProblem(ManifoldPtr manifold, Index num_agents, Index samples_per_agent);
  virtual ~FederatedProblem() = default;

  virtual ProblemKind kind() const = 0;

  const Manifold& manifold() const { return *manifold_; }
  const ManifoldPtr& manifold_ptr() const { return manifold_; }
  Index num_agents() const { return num_agents_; }
  Index samples_per_agent() const { return samples_per_agent_; }

  // Mean sample cost / Riemannian gradient over `samples` of one agent.
  // Repeated indices count with multiplicity.
  virtual double batch_cost(const Point& x, Index agent, std::span<const Index> samples) const = 0;
  virtual Tangent batch_gradient(const Point& x, Index agent,
                                 std::span<const Index> samples) const = 0;

  double local_cost(const Point& x, Index agent) const;
  Tangent local_gradient(const Point& x, Index agent) const;
  double cost(const Point& x) const;
  Tangent gradient(const Point& x) const;

  // Closed-form minimizer when one is known.
  virtual std::optional<Point> reference_optimum() const { return std::nullopt; }

  // Deterministic starting point for runs.
  virtual Point initial_point(std::uint64_t seed) const;

  // Indices 0..N-1.
  std::span<const Index> all_samples() const { return all_samples_; }

 protected:
  void require_agent(Index agent) const;

 private:
  ManifoldPtr manifold_;
  Index num_agents_;
  Index samples_per_agent_;
  std::vector<Index> all_samples_;
};

// Minibatch of `size` indices drawn uniformly with replacement from [0, n).
std::vector<Index> sample_batch(Index n, Index size, Rng& rng);

// Unscaled mean minibatch gradient (1/B) sum_{s in batch} grad f(x; z_{agent,s}).
Tangent minibatch_gradient(const FederatedProblem& problem, Index agent, const Point& x,
                           std::span<const Index> batch);

// Closed-form optimum when available (CPESph, MBCFSti); nullopt otherwise.
std::optional<Point> reference_optimum(const FederatedProblem& problem);

}  // namespace rfed
