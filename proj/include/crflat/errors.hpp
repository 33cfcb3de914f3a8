#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crflat {

enum class ErrorCode {
  ContextMismatch,
  UnknownVariable,
  NonAdmissibleComposition,
  NotAUnit,
  DimensionMismatch,
  SingularJacobian,
  ParseError,
  UndeclaredVariable,
  DivisionByNonUnit,
  NormalizationError,
  RealityError,
  UnsupportedDimension,
  LeviDegenerate,
  NonReal,
  RankCondition,
  NonInvertibleMap,
  ImageNotGraphable,
  InsufficientOrder,
  IndexOutOfRange,
  UsageError,
};

/// Stable machine-readable name, used in JSON reports.
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failures carry the byte offset into the input text.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(ErrorCode::ParseError,
              message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace crflat
