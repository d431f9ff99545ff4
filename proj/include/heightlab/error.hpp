#pragma once

#include <stdexcept>
#include <string>

namespace heightlab {

enum class ErrorKind {
  InvalidInput,
  AllZero,
  DimensionMismatch,
  QuadratureFailure,
  ResolutionTooLow,
  BudgetExceeded,
  NotStabilized,
  BadReduction,
  InsufficientData,
  ParameterOutOfRange,
  Degenerate,
  NotFano,
  OrderViolation,
  FieldShapeInvalid,
};

const char* to_string(ErrorKind kind);

// True for failures caused by numerical or computational limits rather than
// by malformed input.
bool is_resource_failure(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace heightlab
