#include "rfed/solvers/rsd.hpp"

#include <algorithm>
#include <cmath>

#include "rfed/core/errors.hpp"

namespace rfed {

namespace {

constexpr double kFirstStepMin = 1e-6;
constexpr double kFirstStepMax = 1e2;
constexpr double kBbStepMin = 1e-10;
constexpr double kBbStepMax = 1e10;

}  // namespace

void SolverConfig::validate() const {
  if (max_iters < 0) throw ParameterError("solver: max_iters must be >= 0");
  if (!(grad_tol > 0.0)) throw ParameterError("solver: grad_tol must be positive");
  if (!(shrink > 0.0 && shrink < 1.0)) throw ParameterError("solver: shrink must be in (0, 1)");
  if (!(sufficient_decrease > 0.0 && sufficient_decrease < 1.0)) {
    throw ParameterError("solver: sufficient_decrease must be in (0, 1)");
  }
  if (max_halvings < 0) throw ParameterError("solver: max_halvings must be >= 0");
  if (fixed_step && !(*fixed_step > 0.0)) throw ParameterError("solver: fixed step must be positive");
}

SolverResult rsd_minimize(const FederatedProblem& problem, const Point& x0,
                          const SolverConfig& config) {
  config.validate();
  const Manifold& manifold = problem.manifold();
  manifold.require_shape(x0.value, "initial point");

  SolverResult out;
  Point x = x0;
  double f = problem.cost(x);
  Tangent g = problem.gradient(x);
  double gnorm = manifold.norm(x, g);
  out.trace.push_back({0, f, gnorm, 0.0});
  if (config.record_iterates) out.iterates.push_back(x);

  double step = config.initial_step > 0.0
                    ? config.initial_step
                    : std::clamp(gnorm > 0.0 ? 1.0 / gnorm : kFirstStepMax, kFirstStepMin,
                                 kFirstStepMax);

  long iter = 0;
  while (iter < config.max_iters && !(gnorm <= config.grad_tol)) {
    Point next;
    double accepted;
    if (config.fixed_step) {
      accepted = *config.fixed_step;
      next = manifold.move(x, Tangent{-accepted * g.value}, config.retraction);
    } else {
      double trial = step;
      bool ok = false;
      for (int h = 0; h <= config.max_halvings; ++h) {
        next = manifold.move(x, Tangent{-trial * g.value}, config.retraction);
        const double f_next = problem.cost(next);
        if (f_next <= f - config.sufficient_decrease * trial * gnorm * gnorm) {
          ok = true;
          break;
        }
        trial *= config.shrink;
      }
      if (!ok) {
        out.line_search_failed = true;
        break;
      }
      accepted = trial;
    }

    const Tangent g_next = problem.gradient(next);
    if (!config.fixed_step) {
      step = accepted;
      if (config.barzilai_borwein) {
        // s = transported step, y = gradient change, both at the new point.
        const Tangent s = manifold.transport(x, next, Tangent{-accepted * g.value});
        const Tangent y = g_next - manifold.transport(x, next, g);
        const double sy = manifold.inner(next, s, y);
        const double ss = manifold.inner(next, s, s);
        if (sy > 0.0) step = std::clamp(ss / sy, kBbStepMin, kBbStepMax);
      }
    }

    x = std::move(next);
    f = problem.cost(x);
    g = g_next;
    gnorm = manifold.norm(x, g);
    ++iter;
    out.trace.push_back({iter, f, gnorm, accepted});
    if (config.record_iterates) out.iterates.push_back(x);
    if (!std::isfinite(f)) throw DomainError("rsd_minimize: cost became non-finite");
  }

  out.x = std::move(x);
  out.cost = f;
  out.grad_norm = gnorm;
  out.iterations = iter;
  out.converged = gnorm <= config.grad_tol;
  return out;
}

}  // namespace rfed
