#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wzs {

enum class ErrorCode {
  OrderCapExceeded,
  InvalidFactor,
  GroupMismatch,
  NotInMonoid,
  NotASubsequence,
  HandleMismatch,
  NotAnAtom,
  HypothesisNotMet,
  OutOfRange,
  WeightSetLacksPM,
  WeightSetNotGroup,
  EmptyWeightSet,
  InvalidEndomorphism,
  GroupShapeUnsupported,
  NotPrimitive,
  WrongSign,
  InvalidDiscriminant,
  DiscriminantMismatch,
  CompositionInconsistent,
  PrimeDividesConductor,
  NotInNPrime,
  NotInRcirc,
  BoundTooLarge,
  ParseError,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based position inside the offending input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(ErrorCode::ParseError, what + " at line " + std::to_string(line) + ", column " +
                                         std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace wzs
