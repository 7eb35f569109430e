#pragma once

#include <variant>
#include <vector>

#include "rfed/core/types.hpp"

namespace rfed {

struct FixedStep {
  double alpha = 0.0;
};

// alpha0 / (beta + c_t), where c_t counts the rounds t' in [1, t] with
// t' % every == 0. By default the divisor only kicks in once c_t >= 1 so the
// schedule never increases; `verbatim` applies it from t = 1 on.
struct DecayingStep {
  double alpha0 = 0.0;
  double beta = 0.0;
  long every = 1;
  bool verbatim = false;
};

// kappa / (gamma + t)
struct TheoremDecayStep {
  double kappa = 0.0;
  double gamma = 0.0;
};

using StepSchedule = std::variant<FixedStep, DecayingStep, TheoremDecayStep>;

void validate(const StepSchedule& schedule);
double step_size(const StepSchedule& schedule, long t);

struct BatchSchedule {
  enum class Kind {
    kFixed,    // `size` every round
    kBounded,  // sizes[t], the last entry repeating past the end
    kFull,     // every local sample once, in order
  };
  Kind kind = Kind::kFixed;
  Index size = 1;
  std::vector<Index> sizes;

  static BatchSchedule fixed(Index b) { return {Kind::kFixed, b, {}}; }
  static BatchSchedule bounded(std::vector<Index> b) { return {Kind::kBounded, 0, std::move(b)}; }
  static BatchSchedule full() { return {Kind::kFull, 0, {}}; }
};

void validate(const BatchSchedule& schedule);
// Batch size used in round t by an agent holding n samples.
Index batch_size(const BatchSchedule& schedule, long t, Index n);

}  // namespace rfed
