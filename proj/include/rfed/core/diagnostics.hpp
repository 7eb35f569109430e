#pragma once

#include <optional>

namespace rfed {

// Theory constants supplied by the user for step-size condition checks.
// Nothing here is estimated from data.
struct DiagnosticsConfig {
  std::optional<double> L;       // retraction-smoothness constant
  std::optional<double> M;       // retraction/distance comparison constant
  std::optional<double> delta;   // in (0, 1)
  std::optional<double> sigma2;  // minibatch gradient variance bound
  std::optional<double> mu;      // Polyak-Lojasiewicz constant

  // Throws ParameterError when delta is outside (0,1) or a constant is not positive.
  void validate() const;
};

}  // namespace rfed
