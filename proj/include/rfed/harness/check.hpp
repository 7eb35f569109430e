#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "rfed/core/manifold.hpp"
#include "rfed/problems/problem.hpp"

namespace rfed {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double worst = 0.0;      // largest error seen
  double tolerance = 0.0;
  long cases = 0;
  double seconds = 0.0;
  std::string detail;      // failure message, if any
};

// Kernels exercised by the geometry suite, at the sizes used in experiments.
std::vector<ManifoldPtr> geometry_suite_kernels();

// Retraction feasibility, transport isometry and the exp/log round trip
// (||v|| <= 0.1) over `cases` random draws per kernel.
std::vector<CheckResult> run_geometry_suite(std::uint64_t seed = 1, int cases = 100);

struct GradientCase {
  std::string name;
  std::shared_ptr<const FederatedProblem> problem;
  double tolerance;
};

std::vector<GradientCase> gradient_suite_problems(std::uint64_t seed = 1);

// Analytic full gradient against central finite differences (h = 1e-5) at
// `points` random points per problem; error relative to the analytic norm.
std::vector<CheckResult> run_gradient_suite(std::uint64_t seed = 1, int points = 20);

void print_check_table(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace rfed
