#include "rfed/engine/conditions.hpp"

#include <algorithm>

namespace rfed {

namespace {

std::string missing_of(const DiagnosticsConfig& d, bool need_l, bool need_m, bool need_delta,
                       bool need_mu) {
  std::string out;
  auto add = [&out](const char* name) {
    if (!out.empty()) out += ",";
    out += name;
  };
  if (need_l && !d.L) add("L");
  if (need_m && !d.M) add("M");
  if (need_delta && !d.delta) add("delta");
  if (need_mu && !d.mu) add("mu");
  return out;
}

ConditionResult evaluate(std::string name, std::string formula, std::string missing, double lhs,
                         double rhs, bool strict) {
  ConditionResult r;
  r.name = std::move(name);
  r.formula = std::move(formula);
  r.missing = std::move(missing);
  if (!r.missing.empty()) return r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lhs - rhs;
  const bool ok = strict ? lhs > rhs : lhs >= rhs;
  r.status = ok ? ConditionStatus::kSatisfied : ConditionStatus::kViolated;
  return r;
}

}  // namespace

const char* to_string(ConditionStatus status) {
  switch (status) {
    case ConditionStatus::kSatisfied:
      return "satisfied";
    case ConditionStatus::kViolated:
      return "violated";
    case ConditionStatus::kNotEvaluable:
      return "not evaluable";
  }
  return "unknown";
}

bool ConditionReport::all_satisfied() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const ConditionResult& c) {
    return c.status == ConditionStatus::kSatisfied;
  });
}

bool ConditionReport::any_violated() const {
  return std::any_of(conditions.begin(), conditions.end(), [](const ConditionResult& c) {
    return c.status == ConditionStatus::kViolated;
  });
}

ConditionReport check_stepsize_conditions(const DiagnosticsConfig& d, double alpha, long K) {
  const double L = d.L.value_or(0.0);
  const double M = d.M.value_or(0.0);
  const double delta = d.delta.value_or(0.0);
  const double kd = static_cast<double>(K);
  ConditionReport report;
  if (K == 1) {
    report.conditions.push_back(evaluate("single_step", "2 - delta >= L*alpha",
                                         missing_of(d, true, false, true, false), 2.0 - delta,
                                         L * alpha, false));
  } else {
    const double q = L * L * alpha * alpha * M;
    report.conditions.push_back(evaluate("multi_step_drift",
                                         "1 >= L^2*alpha^2*M*(K+1)*(K-2) + alpha*L*K",
                                         missing_of(d, true, true, false, false), 1.0,
                                         q * (kd + 1.0) * (kd - 2.0) + alpha * L * kd, false));
    report.conditions.push_back(evaluate("multi_step_curvature", "1 - delta >= 2*L^2*alpha^2*M",
                                         missing_of(d, true, true, true, false), 1.0 - delta,
                                         2.0 * q, false));
  }
  if (d.mu) {
    report.conditions.push_back(evaluate("pl_rate", "1/(mu*(K-1+delta)) > alpha",
                                         missing_of(d, false, false, true, true),
                                         1.0 / (*d.mu * (kd - 1.0 + delta)), alpha, true));
  }
  return report;
}

}  // namespace rfed
