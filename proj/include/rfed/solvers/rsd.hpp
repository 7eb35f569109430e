#pragma once

#include <optional>
#include <vector>

#include "rfed/problems/problem.hpp"

namespace rfed {

struct SolverConfig {
  long max_iters = 10000;
  double grad_tol = 1e-6;
  // Armijo backtracking. initial_step <= 0 means 1/||grad F(x0)|| clipped to [1e-6, 1e2].
  double initial_step = 0.0;
  double shrink = 0.5;
  double sufficient_decrease = 1e-4;
  int max_halvings = 50;
  // Later trial steps from the Barzilai-Borwein ratio instead of the previous accepted step.
  bool barzilai_borwein = true;
  // Plain gradient descent x <- R(x, -step grad F(x)) with no line search.
  std::optional<double> fixed_step;
  RetractionMode retraction = RetractionMode::kCheap;
  bool record_iterates = false;

  void validate() const;
};

struct SolverIterate {
  long iter = 0;
  double cost = 0.0;
  double grad_norm = 0.0;
  double step = 0.0;  // step accepted to reach this iterate (0 for the start)
};

struct SolverResult {
  Point x;
  double cost = 0.0;
  double grad_norm = 0.0;
  long iterations = 0;
  bool converged = false;
  bool line_search_failed = false;
  std::vector<SolverIterate> trace;
  std::vector<Point> iterates;  // only with record_iterates, starting with x0
};

// Riemannian steepest descent on the full objective.
SolverResult rsd_minimize(const FederatedProblem& problem, const Point& x0,
                          const SolverConfig& config = {});

}  // namespace rfed
