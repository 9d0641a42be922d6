#include "hclab/errors.hpp"

namespace hclab {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return "UsageError";
    case ErrorKind::Param: return "ParamError";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::NotInDenseSet: return "NotInDenseSet";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotInKernel: return "NotInKernel";
    case ErrorKind::NotEigen: return "NotEigen";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NoAdjoint: return "NoAdjoint";
    case ErrorKind::UnsupportedPair: return "UnsupportedPair";
    case ErrorKind::Overflow: return "OverflowError";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::AnnulusViolation: return "AnnulusViolation";
    case ErrorKind::NotConvergent: return "NotConvergent";
    case ErrorKind::ToleranceUnreachable: return "ToleranceUnreachable";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
  }
  return "UnknownError";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage:
      return 2;
    case ErrorKind::Overflow:
    case ErrorKind::DegreeOverflow:
    case ErrorKind::AnnulusViolation:
    case ErrorKind::NotConvergent:
    case ErrorKind::ToleranceUnreachable:
    case ErrorKind::BudgetExceeded:
      return 3;
    case ErrorKind::Param:
    case ErrorKind::SpaceMismatch:
    case ErrorKind::Domain:
    case ErrorKind::NotInDenseSet:
    case ErrorKind::NotInvertible:
    case ErrorKind::NotInKernel:
    case ErrorKind::NotEigen:
    case ErrorKind::ZeroVector:
    case ErrorKind::NoAdjoint:
    case ErrorKind::UnsupportedPair:
      return 4;
  }
  return 1;
}

void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(error_name(kind)) + ": " + what);
}

}  // namespace hclab
