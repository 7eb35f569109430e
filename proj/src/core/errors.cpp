#include "rfed/core/errors.hpp"

#include <sstream>

namespace rfed {

const char* to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kParameter:
      return "parameter";
    case ErrorCategory::kDomain:
      return "domain";
    case ErrorCategory::kContract:
      return "contract";
    case ErrorCategory::kUnsupported:
      return "unsupported";
    case ErrorCategory::kFormat:
      return "format";
    case ErrorCategory::kRun:
      return "run";
    case ErrorCategory::kIo:
      return "io";
  }
  return "unknown";
}

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kParameter:
      return 2;
    case ErrorCategory::kDomain:
      return 3;
    case ErrorCategory::kContract:
      return 4;
    case ErrorCategory::kUnsupported:
      return 5;
    case ErrorCategory::kFormat:
      return 6;
    case ErrorCategory::kRun:
      return 7;
    case ErrorCategory::kIo:
      return 8;
  }
  return 1;
}

namespace {

std::string with_context(const std::string& what, long round, long inner_step, long agent) {
  std::ostringstream os;
  os << what << " (t=" << round << ", k=" << inner_step << ", j=" << agent << ")";
  return os.str();
}

}  // namespace

RunError::RunError(const std::string& what, long round, long inner_step, long agent)
    : Error(ErrorCategory::kRun, with_context(what, round, inner_step, agent)),
      round_(round),
      inner_step_(inner_step),
      agent_(agent) {}

}  // namespace rfed
