#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace singshock {

enum class ErrorKind {
  Domain,
  DegenerateJump,
  NotRepresentable,
  NegativeStrength,
  NoClassicalSolution,
  ConvergenceFailure,
  Unresolvable,
  OutsideSDSL,
  OutsideFan,
  OvercompressibilityLost,
  Pole,
  ExpectedTwoShocks,
  EventCongestion,
  BlowUp,
  NoFront,
  WindowClipped,
  InvalidInput,
};

std::string_view error_kind_name(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace singshock
