#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace degenlag {

enum class ErrorCode {
  SingularAskew,
  NotLinearAlpha,
  NewtonDiverged,
  SingularJacobian,
  VortexCollision,
  EigenNoConvergence,
  NonFiniteState,
  GridMismatch,
  TooShort,
  InvalidArgument,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// Every numerical failure in the library is reported through this type.
/// `code()` identifies the failure, `what()` carries the operation name and
/// a human-readable reason.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& where, const std::string& message);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  [[nodiscard]] const std::string& where() const noexcept { return where_; }

 private:
  ErrorCode code_;
  std::string where_;
};

}  // namespace degenlag
