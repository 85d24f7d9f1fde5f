#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gdyn {

enum class ErrorCode {
  // input / validation failures
  SelfLoop,
  DuplicateEdge,
  InvalidVertex,
  InvalidInput,
  AllZero,
  InvalidCoupling,
  NotConnected,
  GraphTooLarge,
  NotARoot,
  NotAnEquilibrium,
  NotOnManifold,
  UnknownExample,
  // numerical / search failures
  NoConvergence,
  StepUnderflow,
  MonotonicityViolation,
  BlockMismatch,
  CycleCapExceeded,
  SearchBudgetExceeded,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
/// The CLI maps validation failures to exit status 2 and numerical ones to 3.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  bool numerical() const noexcept { return code_ >= ErrorCode::NoConvergence; }

 private:
  ErrorCode code_;
};

}  // namespace gdyn
