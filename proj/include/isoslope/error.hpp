#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace isoslope {

enum class ErrorKind {
  NotPrime,
  DegreeTooLarge,
  FieldMismatch,
  PrecisionInsufficient,
  MalformedInput,
  InvalidDatum,
  StrategyUnavailable,
  RankTooLargeForP,
  DatumMismatch,
  NotInCorootSpan,
  NotDominant,
  UnsupportedDatum,
  NonConvexInput,
  InvalidC3,
  PrimeTooSmall,
  Interrupted,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every recoverable failure of the library is reported through this type.
// Programming errors (broken internal invariants) use std::logic_error.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Set on PrecisionInsufficient: a precision that is expected to succeed.
  std::optional<int> suggested_precision() const noexcept { return suggested_precision_; }
  Error& with_suggested_precision(int n) {
    suggested_precision_ = n;
    return *this;
  }

 private:
  ErrorKind kind_;
  std::optional<int> suggested_precision_;
};

}  // namespace isoslope
