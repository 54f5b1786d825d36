#pragma once

#include <string_view>

#include <Eigen/Dense>

#include "degenlag/error.hpp"

namespace degenlag {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Linear systems whose estimated condition number exceeds this are treated
/// as singular.
inline constexpr double kMaxConditionNumber = 1e14;

/// LU with partial pivoting plus a reciprocal-condition estimate. Throws
/// `Error{on_failure}` when the matrix is numerically singular.
class CheckedLu {
 public:
  CheckedLu(const Matrix& m, ErrorCode on_failure, std::string_view where);

  [[nodiscard]] Vector solve(const Vector& rhs) const;
  [[nodiscard]] Matrix solve(const Matrix& rhs) const;
  [[nodiscard]] double rcond() const noexcept { return rcond_; }

 private:
  Eigen::PartialPivLU<Matrix> lu_;
  double rcond_ = 0.0;
};

[[nodiscard]] bool all_finite(const Vector& v) noexcept;

[[nodiscard]] inline double inf_norm(const Vector& v) noexcept {
  return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>();
}

}  // namespace degenlag
