#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rfed/engine/config.hpp"
#include "rfed/problems/problem.hpp"

namespace rfed {

struct LocalRound {
  GradientStream stream;
  Point endpoint;  // x_{t,K}
};

// K local steps of agent `agent` from the broadcast point:
//   x_k = R(x_{k-1}, eta_k),  eta_k = -alphas[k] * mean grad over batches[k],
//   zeta = sum_k T_{x_{k-1} -> x_tilde}(eta_k),
// each step transported in one hop back to x_tilde. With `accumulate` false
// only the endpoint is computed. Failures surface as RunError(round, k, agent).
LocalRound agent_local_round(const FederatedProblem& problem, Index agent, const Point& x_tilde,
                             long round, std::span<const double> alphas,
                             std::span<const std::vector<Index>> batches, RetractionMode mode,
                             bool accumulate = true);

// Minibatch for (seed, round, step, agent): `size` draws with replacement from [0, n).
std::vector<Index> draw_batch(std::uint64_t seed, long round, long step, Index agent, Index size,
                              Index n);

// R_{x_tilde}((1/S) sum_j zeta_j), summed in ascending agent order.
Point aggregate_gradient_stream(const Manifold& manifold, const Point& x_tilde,
                                std::span<const GradientStream> streams,
                                RetractionMode mode = RetractionMode::kCheap);

// Exp_{x_tilde}((1/S) sum_j Log_{x_tilde}(endpoint_j)), summed in list order.
Point aggregate_tangent_mean(const Manifold& manifold, const Point& x_tilde,
                             std::span<const Point> endpoints);

struct RunResult {
  std::vector<TraceRecord> trace;
  Point final_point;
};

// Called after every round with the new record and the new global point.
using RoundObserver = std::function<void(const TraceRecord&, const Point&)>;

// T outer rounds of full-participation federated optimization. The trace
// evaluates the full objective and exact gradient norm at each new global
// point; `f_star` fills the excess column.
RunResult run_federated(const FederatedProblem& problem, const RunConfig& config, const Point& x0,
                        std::optional<double> f_star = std::nullopt,
                        const RoundObserver& observer = {});

}  // namespace rfed
