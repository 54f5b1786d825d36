#include "degenlag/linalg.hpp"

#include <cmath>
#include <string>

namespace degenlag {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SingularAskew: return "SingularAskew";
    case ErrorCode::NotLinearAlpha: return "NotLinearAlpha";
    case ErrorCode::NewtonDiverged: return "NewtonDiverged";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::VortexCollision: return "VortexCollision";
    case ErrorCode::EigenNoConvergence: return "EigenNoConvergence";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& where, const std::string& message)
    : std::runtime_error(where + ": " + std::string(to_string(code)) + ": " + message),
      code_(code),
      where_(where) {}

CheckedLu::CheckedLu(const Matrix& m, ErrorCode on_failure, std::string_view where) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::InvalidArgument, std::string(where), "matrix is not square");
  }
  if (!m.allFinite()) {
    throw Error(on_failure, std::string(where), "matrix has non-finite entries");
  }
  lu_.compute(m);
  rcond_ = lu_.rcond();
  // rcond() is an estimate of 1/cond_1; NaN means an exactly zero pivot.
  if (!(rcond_ * kMaxConditionNumber >= 1.0)) {
    throw Error(on_failure, std::string(where),
                "condition estimate above 1e14 (rcond = " + std::to_string(rcond_) + ")");
  }
}

Vector CheckedLu::solve(const Vector& rhs) const { return lu_.solve(rhs); }

Matrix CheckedLu::solve(const Matrix& rhs) const { return lu_.solve(rhs); }

bool all_finite(const Vector& v) noexcept { return v.allFinite(); }

}  // namespace degenlag
