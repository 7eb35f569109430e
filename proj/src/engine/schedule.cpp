#include "rfed/engine/schedule.hpp"

#include <cmath>

#include "rfed/core/errors.hpp"

namespace rfed {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParameterError(std::string("step schedule: ") + what + " must be positive");
  }
}

}  // namespace

void validate(const StepSchedule& schedule) {
  std::visit(Overloaded{
                 [](const FixedStep& s) { require_positive(s.alpha, "alpha"); },
                 [](const DecayingStep& s) {
                   require_positive(s.alpha0, "alpha0");
                   require_positive(s.beta, "beta");
                   if (s.every < 1) throw ParameterError("step schedule: dec must be >= 1");
                 },
                 [](const TheoremDecayStep& s) {
                   require_positive(s.kappa, "kappa");
                   require_positive(s.gamma, "gamma");
                 },
             },
             schedule);
}

double step_size(const StepSchedule& schedule, long t) {
  if (t < 0) throw ParameterError("step_size: round index must be >= 0");
  return std::visit(Overloaded{
                        [](const FixedStep& s) { return s.alpha; },
                        [t](const DecayingStep& s) {
                          if (t == 0) return s.alpha0;
                          const long c = t / s.every;
                          if (c == 0 && !s.verbatim) return s.alpha0;
                          return s.alpha0 / (s.beta + static_cast<double>(c));
                        },
                        [t](const TheoremDecayStep& s) {
                          return s.kappa / (s.gamma + static_cast<double>(t));
                        },
                    },
                    schedule);
}

void validate(const BatchSchedule& schedule) {
  switch (schedule.kind) {
    case BatchSchedule::Kind::kFixed:
      if (schedule.size < 1) throw ParameterError("batch schedule: size must be >= 1");
      break;
    case BatchSchedule::Kind::kBounded:
      if (schedule.sizes.empty()) throw ParameterError("batch schedule: sizes must be non-empty");
      for (Index b : schedule.sizes) {
        if (b < 1) throw ParameterError("batch schedule: every size must be >= 1");
      }
      break;
    case BatchSchedule::Kind::kFull:
      break;
  }
}

Index batch_size(const BatchSchedule& schedule, long t, Index n) {
  switch (schedule.kind) {
    case BatchSchedule::Kind::kFixed:
      return schedule.size;
    case BatchSchedule::Kind::kBounded: {
      const auto i = std::min<std::size_t>(static_cast<std::size_t>(t), schedule.sizes.size() - 1);
      return schedule.sizes[i];
    }
    case BatchSchedule::Kind::kFull:
      return n;
  }
  return n;
}

}  // namespace rfed
