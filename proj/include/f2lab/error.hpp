#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace f2lab {

enum class Errc {
  VertexOutOfRange,
  LoopNotAllowed,
  SpaceMismatch,
  BudgetExceeded,
  UnsupportedOrder,
  UnsupportedExponent,
  TooManyVertices,
  PositionOutOfRange,
  InvalidEmbedding,
  MalformedCoefficient,
  EmptyInput,
  OutsideWildcards,
  NotCanonical,
  WrongBlockSize,
  NotBlock,
  DegreeNotLowered,
  InsufficientRoom,
  CanonicalSetNotFound,
  RecursionBudgetExceeded,
  NotACode,
  ParityViolation,
  TooLarge,
  NotSymmetric,
  InvalidArgument,
  IoError,
  FormatError,
};

std::string_view errc_name(Errc code) noexcept;

/// Exception type thrown by every f2lab operation. The code names the
/// failure class; the message carries the offending values.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace f2lab
