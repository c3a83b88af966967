#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sgv {

enum class ErrorKind {
  NonInvertible,
  NotPrime,
  Unsupported,
  DegreeTooLarge,
  ZeroInverse,
  CtxMismatch,
  BothZero,
  ZeroDenominator,
  DegreeLawViolation,
  PoleAt,
  ZeroPolynomial,
  DegreeOutOfRange,
  CharTooSmall,
  ConstantFunction,
  ZeroLambda,
  PerfectPowerInput,
  DegreeTooSmall,
  RankDeficient,
  SearchSpaceTooLarge,
  PreconditionViolated,
  NotFound,
  OrderDoesNotDivide,
  FieldMismatch,
  AllWindowsContainPoles,
  BudgetExceeded,
  DegenerateDegrees,
  BadRange,
  WindowEmpty,
  LambdaSetExhausted,
  InvalidArgument,
  ParseError,
  IoError,
  Internal,
};

std::string_view to_string(ErrorKind kind);

/// Domain error raised by every operation in the library. The kind is the
/// stable, machine-checkable part; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& message)
      : Error(ErrorKind::ParseError,
              "parse error at offset " + std::to_string(offset) + ": " + message),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace sgv
