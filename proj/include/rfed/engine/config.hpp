#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include <json.hpp>

#include "rfed/core/diagnostics.hpp"
#include "rfed/core/types.hpp"
#include "rfed/engine/schedule.hpp"

namespace rfed {

class FederatedProblem;

enum class Aggregation {
  kGradientStream,  // R(mean of transported step sums)
  kTangentMean,     // Exp(mean of Log(local endpoints))
};

const char* to_string(Aggregation aggregation);
const char* to_string(RetractionMode mode);

struct RunConfig {
  long T = 1;
  Index S = 1;
  long K = 1;
  StepSchedule step = FixedStep{1e-2};
  BatchSchedule batch = BatchSchedule::fixed(1);
  Aggregation aggregation = Aggregation::kGradientStream;
  RetractionMode retraction = RetractionMode::kCheap;
  std::uint64_t seed = 1;
  // Seed of the starting point; the dataset seed when absent.
  std::optional<std::uint64_t> init_seed;
  // Wall-clock timing in traces. Off by default so reruns are byte-identical.
  bool record_wall_time = false;
  std::optional<DiagnosticsConfig> diagnostics;

  // Field ranges only.
  void validate() const;
  // Field ranges plus compatibility with the problem (S, log availability).
  void validate(const FederatedProblem& problem) const;
};

// Per-agent upload: the transported sum of the agent's K steps, based at the
// global point of the round.
struct GradientStream {
  Tangent zeta;
  Point base;
  Index agent = 0;
  long round = 0;
};

// State after outer round t (1-based).
struct TraceRecord {
  long t = 0;
  double F = 0.0;
  double excess = std::numeric_limits<double>::quiet_NaN();
  double grad_norm = 0.0;
  double alpha = 0.0;
  Index B = 0;
  double elapsed_s = 0.0;
};

nlohmann::json to_json(const StepSchedule& step);
StepSchedule step_schedule_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BatchSchedule& batch);
BatchSchedule batch_schedule_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DiagnosticsConfig& diagnostics);
DiagnosticsConfig diagnostics_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& config);
// Throws ParameterError on unknown keys or values out of range.
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

}  // namespace rfed
