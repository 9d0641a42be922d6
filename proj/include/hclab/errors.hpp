#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hclab {

enum class ErrorKind {
  Usage,
  // precondition failures
  Param,
  SpaceMismatch,
  Domain,
  NotInDenseSet,
  NotInvertible,
  NotInKernel,
  NotEigen,
  ZeroVector,
  NoAdjoint,
  UnsupportedPair,
  // numerical failures
  Overflow,
  DegreeOverflow,
  AnnulusViolation,
  NotConvergent,
  ToleranceUnreachable,
  BudgetExceeded,
};

/// Stable name used in reports and on stderr, e.g. "AnnulusViolation".
std::string_view error_name(ErrorKind kind);

/// Process exit code for the CLI: 2 usage, 3 numerical failure, 4 precondition failure.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

}  // namespace hclab
