#pragma once

#include <stdexcept>
#include <string>

namespace rfed {

enum class ErrorCategory {
  kParameter,
  kDomain,
  kContract,
  kUnsupported,
  kFormat,
  kRun,
  kIo,
};

const char* to_string(ErrorCategory category);

// Process exit code used by the CLI for each category (0 is success).
int exit_code(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

struct ParameterError : Error {
  explicit ParameterError(const std::string& what) : Error(ErrorCategory::kParameter, what) {}
};

// Input outside the domain of a geometric map (antipodal log, non-SPD matrix, ...).
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorCategory::kDomain, what) {}
};

// Precondition or cross-object contract violated by the caller.
struct ContractError : Error {
  explicit ContractError(const std::string& what) : Error(ErrorCategory::kContract, what) {}
};

struct UnsupportedOperation : Error {
  explicit UnsupportedOperation(const std::string& what)
      : Error(ErrorCategory::kUnsupported, what) {}
};

struct FormatError : Error {
  explicit FormatError(const std::string& what) : Error(ErrorCategory::kFormat, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorCategory::kIo, what) {}
};

// Failure inside a federated run, tagged with the (round, inner step, agent) it came from.
class RunError : public Error {
 public:
  RunError(const std::string& what, long round, long inner_step, long agent);

  long round() const noexcept { return round_; }
  long inner_step() const noexcept { return inner_step_; }
  long agent() const noexcept { return agent_; }

 private:
  long round_;
  long inner_step_;
  long agent_;
};

}  // namespace rfed
