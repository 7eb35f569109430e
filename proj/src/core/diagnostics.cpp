#include "rfed/core/diagnostics.hpp"

#include "rfed/core/errors.hpp"

namespace rfed {

void DiagnosticsConfig::validate() const {
  auto positive = [](const std::optional<double>& v, const char* name) {
    if (v && !(*v > 0.0)) throw ParameterError(std::string("diagnostics: ") + name + " must be positive");
  };
  positive(L, "L");
  positive(M, "M");
  positive(sigma2, "sigma2");
  positive(mu, "mu");
  if (delta && !(*delta > 0.0 && *delta < 1.0)) {
    throw ParameterError("diagnostics: delta must lie in (0, 1)");
  }
}

}  // namespace rfed
