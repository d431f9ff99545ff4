#include "heightlab/error.hpp"

namespace heightlab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::AllZero: return "AllZero";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::ResolutionTooLow: return "ResolutionTooLow";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotStabilized: return "NotStabilized";
    case ErrorKind::BadReduction: return "BadReduction";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::NotFano: return "NotFano";
    case ErrorKind::OrderViolation: return "OrderViolation";
    case ErrorKind::FieldShapeInvalid: return "FieldShapeInvalid";
  }
  return "Unknown";
}

bool is_resource_failure(ErrorKind kind) {
  return kind == ErrorKind::QuadratureFailure || kind == ErrorKind::ResolutionTooLow ||
         kind == ErrorKind::BudgetExceeded || kind == ErrorKind::NotStabilized;
}

}  // namespace heightlab
