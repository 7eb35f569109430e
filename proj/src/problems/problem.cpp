#include "rfed/problems/problem.hpp"

#include <numeric>

#include "rfed/core/errors.hpp"
#include "rfed/problems/cpesph.hpp"
#include "rfed/problems/mbcfsti.hpp"

namespace rfed {

const char* to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kCpesph:
      return "cpesph";
    case ProblemKind::kCfmspd:
      return "cfmspd";
    case ProblemKind::kMbcfsti:
      return "mbcfsti";
    case ProblemKind::kMtfl:
      return "mtfl";
    case ProblemKind::kCustom:
      return "custom";
  }
  return "unknown";
}

ProblemKind problem_kind_from_string(const std::string& name) {
  if (name == "cpesph") return ProblemKind::kCpesph;
  if (name == "cfmspd") return ProblemKind::kCfmspd;
  if (name == "mbcfsti") return ProblemKind::kMbcfsti;
  if (name == "mtfl") return ProblemKind::kMtfl;
  throw ParameterError("unknown problem kind '" + name + "'");
}

FederatedProblem::FederatedProblem(ManifoldPtr manifold, Index num_agents,
                                   Index samples_per_agent)
    : manifold_(std::move(manifold)),
      num_agents_(num_agents),
      samples_per_agent_(samples_per_agent),
      all_samples_(static_cast<std::size_t>(std::max<Index>(samples_per_agent, 0))) {
  if (!manifold_) throw ParameterError("problem: manifold is required");
  if (num_agents < 1) throw ParameterError("problem: at least one agent is required");
  if (samples_per_agent < 1) throw ParameterError("problem: at least one sample per agent is required");
  std::iota(all_samples_.begin(), all_samples_.end(), Index{0});
}

double FederatedProblem::local_cost(const Point& x, Index agent) const {
  return batch_cost(x, agent, all_samples_);
}

Tangent FederatedProblem::local_gradient(const Point& x, Index agent) const {
  return batch_gradient(x, agent, all_samples_);
}

double FederatedProblem::cost(const Point& x) const {
  double total = 0.0;
  for (Index i = 0; i < num_agents_; ++i) total += local_cost(x, i);
  return total / static_cast<double>(num_agents_);
}

Tangent FederatedProblem::gradient(const Point& x) const {
  Tangent total = local_gradient(x, 0);
  for (Index i = 1; i < num_agents_; ++i) total += local_gradient(x, i);
  total.value /= static_cast<double>(num_agents_);
  return total;
}

Point FederatedProblem::initial_point(std::uint64_t seed) const {
  Rng rng({seed, 0x696e6974ULL});
  return manifold_->random_point(rng);
}

void FederatedProblem::require_agent(Index agent) const {
  if (agent < 0 || agent >= num_agents_) throw ParameterError("problem: agent index out of range");
}

std::vector<Index> sample_batch(Index n, Index size, Rng& rng) {
  if (n < 1) throw ParameterError("sample_batch: empty population");
  if (size < 1) throw ParameterError("sample_batch: batch size must be positive");
  std::vector<Index> batch(static_cast<std::size_t>(size));
  for (auto& b : batch) b = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
  return batch;
}

Tangent minibatch_gradient(const FederatedProblem& problem, Index agent, const Point& x,
                           std::span<const Index> batch) {
  if (batch.empty()) throw ParameterError("minibatch_gradient: empty batch");
  for (Index s : batch) {
    if (s < 0 || s >= problem.samples_per_agent()) {
      throw ParameterError("minibatch_gradient: sample index out of range");
    }
  }
  return problem.batch_gradient(x, agent, batch);
}

std::optional<Point> reference_optimum(const FederatedProblem& problem) {
  return problem.reference_optimum();
}

}  // namespace rfed
