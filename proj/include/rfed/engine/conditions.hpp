#pragma once

#include <string>
#include <vector>

#include "rfed/core/diagnostics.hpp"

namespace rfed {

enum class ConditionStatus { kSatisfied, kViolated, kNotEvaluable };

const char* to_string(ConditionStatus status);

// lhs >= rhs (or lhs > rhs when strict); margin = lhs - rhs.
struct ConditionResult {
  std::string name;
  std::string formula;
  ConditionStatus status = ConditionStatus::kNotEvaluable;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  std::string missing;  // constants needed but not supplied
};

struct ConditionReport {
  std::vector<ConditionResult> conditions;
  bool all_satisfied() const;
  bool any_violated() const;
};

// Step-size conditions of the convergence analysis for fixed alpha and K:
//   K = 1:  2 - delta >= L alpha
//   K > 1:  1 >= L^2 alpha^2 M (K+1)(K-2) + alpha L K  and  1 - delta >= 2 L^2 alpha^2 M
// plus, when mu is given, alpha < 1 / (mu (K - 1 + delta)).
ConditionReport check_stepsize_conditions(const DiagnosticsConfig& diagnostics, double alpha,
                                          long K);

}  // namespace rfed
