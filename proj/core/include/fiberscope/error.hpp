#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fiberscope {

enum class ErrorCode {
  IndexOutOfRange,
  DuplicateEdge,
  SelfLoop,
  WidthMismatch,
  NotASimplex,
  DegreeOutOfRange,
  NotPrime,
  TooLarge,
  UnknownChamber,
  NonUniqueMinimizer,
  NotAFrame,
  DuplicatePanel,
  NotMagic,
  ZeroWeightCube,
  NotFound,
  ImproperColoring,
  UnsupportedDegree,
  BudgetExceeded,
  CapExceeded,
  InconsistentHeight,
  BoundaryElement,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// All library failures surface as this exception; `code()` identifies the
/// contract violation so callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fiberscope
