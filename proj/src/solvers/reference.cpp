#include "rfed/solvers/reference.hpp"

#include "rfed/problems/cfmspd.hpp"
#include "rfed/problems/mtfl.hpp"

namespace rfed {

namespace {

Point solver_start(const FederatedProblem& problem) {
  if (const auto* p = dynamic_cast<const CfmspdProblem*>(&problem)) return p->log_euclidean_mean();
  if (const auto* p = dynamic_cast<const MtflProblem*>(&problem); p && p->ground_truth()) {
    return Point{*p->ground_truth()};
  }
  return problem.initial_point(0);
}

}  // namespace

ReferenceSolution compute_reference(const FederatedProblem& problem, const SolverConfig& config) {
  if (std::optional<Point> closed = problem.reference_optimum()) {
    const double cost = problem.cost(*closed);
    const double gnorm = problem.manifold().norm(*closed, problem.gradient(*closed));
    return {std::move(*closed), cost, gnorm, "closed_form"};
  }
  SolverResult r = rsd_minimize(problem, solver_start(problem), config);
  return {std::move(r.x), r.cost, r.grad_norm, r.converged ? "rsd" : "rsd_unconverged"};
}

}  // namespace rfed
