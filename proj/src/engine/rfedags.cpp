#include "rfed/engine/rfedags.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "rfed/core/errors.hpp"
#include "rfed/core/parallel.hpp"
#include "rfed/core/rng.hpp"

namespace rfed {

namespace {

constexpr std::uint64_t kBatchStreamTag = 0x6261746368;  // "batch"

bool same_point(const Point& a, const Point& b) {
  return a.value.rows() == b.value.rows() && a.value.cols() == b.value.cols() &&
         (a.value.array() == b.value.array()).all();
}

}  // namespace

LocalRound agent_local_round(const FederatedProblem& problem, Index agent, const Point& x_tilde,
                             long round, std::span<const double> alphas,
                             std::span<const std::vector<Index>> batches, RetractionMode mode,
                             bool accumulate) {
  if (alphas.empty() || alphas.size() != batches.size()) {
    throw ParameterError("agent_local_round: need one step size and one batch per inner step");
  }
  const Manifold& manifold = problem.manifold();
  Point x = x_tilde;
  Tangent zeta = manifold.zero_tangent(x_tilde);
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    try {
      const Tangent g = minibatch_gradient(problem, agent, x, batches[k]);
      const Tangent eta{-alphas[k] * g.value};
      if (accumulate) {
        // x_0 is x_tilde itself, where the transport is the identity.
        zeta += k == 0 ? eta : manifold.transport(x, x_tilde, eta);
      }
      x = manifold.move(x, eta, mode);
      if (!x.value.allFinite()) throw DomainError("iterate is not finite");
    } catch (const RunError&) {
      throw;
    } catch (const std::exception& e) {
      throw RunError(e.what(), round, static_cast<long>(k) + 1, static_cast<long>(agent));
    }
  }
  return {GradientStream{std::move(zeta), x_tilde, agent, round}, std::move(x)};
}

std::vector<Index> draw_batch(std::uint64_t seed, long round, long step, Index agent, Index size,
                              Index n) {
  Rng rng({seed, static_cast<std::uint64_t>(round), static_cast<std::uint64_t>(step),
           static_cast<std::uint64_t>(agent), kBatchStreamTag});
  return sample_batch(n, size, rng);
}

Point aggregate_gradient_stream(const Manifold& manifold, const Point& x_tilde,
                                std::span<const GradientStream> streams, RetractionMode mode) {
  if (streams.empty()) throw ContractError("aggregate_gradient_stream: no streams");
  std::vector<const GradientStream*> order;
  order.reserve(streams.size());
  for (const GradientStream& s : streams) {
    if (!same_point(s.base, x_tilde)) {
      throw ContractError("aggregate_gradient_stream: stream of agent " + std::to_string(s.agent) +
                          " is not based at the current global point");
    }
    if (s.round != streams.front().round) {
      throw ContractError("aggregate_gradient_stream: streams from different rounds");
    }
    order.push_back(&s);
  }
  std::sort(order.begin(), order.end(),
            [](const GradientStream* a, const GradientStream* b) { return a->agent < b->agent; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i]->agent == order[i - 1]->agent) {
      throw ContractError("aggregate_gradient_stream: duplicate agent " +
                          std::to_string(order[i]->agent));
    }
  }
  Tangent sum = order.front()->zeta;
  for (std::size_t i = 1; i < order.size(); ++i) sum += order[i]->zeta;
  sum.value /= static_cast<double>(order.size());
  return manifold.move(x_tilde, sum, mode);
}

Point aggregate_tangent_mean(const Manifold& manifold, const Point& x_tilde,
                             std::span<const Point> endpoints) {
  if (endpoints.empty()) throw ContractError("aggregate_tangent_mean: no endpoints");
  Tangent sum = manifold.log(x_tilde, endpoints.front());
  for (std::size_t i = 1; i < endpoints.size(); ++i) sum += manifold.log(x_tilde, endpoints[i]);
  sum.value /= static_cast<double>(endpoints.size());
  return manifold.exp(x_tilde, sum);
}

RunResult run_federated(const FederatedProblem& problem, const RunConfig& config, const Point& x0,
                        std::optional<double> f_star, const RoundObserver& observer) {
  config.validate(problem);
  const Manifold& manifold = problem.manifold();
  manifold.require_shape(x0.value, "initial point");
  if (!manifold.contains(x0.value)) {
    throw ParameterError("run_federated: initial point is not on " + manifold.name());
  }

  const Index S = problem.num_agents();
  const Index N = problem.samples_per_agent();
  const bool full_batch = config.batch.kind == BatchSchedule::Kind::kFull;
  const bool streams_needed = config.aggregation == Aggregation::kGradientStream;
  const auto start = std::chrono::steady_clock::now();

  RunResult result;
  result.trace.reserve(static_cast<std::size_t>(config.T));
  Point x = x0;
  std::vector<LocalRound> locals(static_cast<std::size_t>(S));

  for (long t = 0; t < config.T; ++t) {
    const double alpha = step_size(config.step, t);
    const Index b = batch_size(config.batch, t, N);
    const std::vector<double> alphas(static_cast<std::size_t>(config.K), alpha);

    parallel_for(static_cast<std::size_t>(S), [&](std::size_t j) {
      const auto agent = static_cast<Index>(j);
      std::vector<std::vector<Index>> batches;
      batches.reserve(static_cast<std::size_t>(config.K));
      for (long k = 0; k < config.K; ++k) {
        if (full_batch) {
          batches.emplace_back(problem.all_samples().begin(), problem.all_samples().end());
        } else {
          batches.push_back(draw_batch(config.seed, t, k, agent, b, N));
        }
      }
      locals[j] = agent_local_round(problem, agent, x, t, alphas, batches, config.retraction,
                                    streams_needed);
    });

    try {
      if (streams_needed) {
        std::vector<GradientStream> streams;
        streams.reserve(locals.size());
        for (LocalRound& l : locals) streams.push_back(std::move(l.stream));
        x = aggregate_gradient_stream(manifold, x, streams, config.retraction);
      } else {
        std::vector<Point> endpoints;
        endpoints.reserve(locals.size());
        for (LocalRound& l : locals) endpoints.push_back(std::move(l.endpoint));
        x = aggregate_tangent_mean(manifold, x, endpoints);
      }
    } catch (const std::exception& e) {
      throw RunError(std::string("aggregation failed: ") + e.what(), t, 0, -1);
    }

    TraceRecord rec;
    rec.t = t + 1;
    rec.F = problem.cost(x);
    if (!std::isfinite(rec.F) || !x.value.allFinite()) {
      throw RunError("global iterate diverged", t, 0, -1);
    }
    if (f_star) rec.excess = rec.F - *f_star;
    rec.grad_norm = manifold.norm(x, problem.gradient(x));
    rec.alpha = alpha;
    rec.B = b;
    if (config.record_wall_time) {
      rec.elapsed_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    result.trace.push_back(rec);
    if (observer) observer(rec, x);
  }
  result.final_point = std::move(x);
  return result;
}

}  // namespace rfed
