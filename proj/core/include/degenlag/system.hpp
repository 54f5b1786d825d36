#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "degenlag/linalg.hpp"

namespace degenlag {

/// Contraction (u, v) -> H'''(q)(u, v, .) of a symmetric third-order tensor,
/// returned as a column vector.
class SymThirdTensor {
 public:
  using Contraction = std::function<Vector(const Vector&, const Vector&)>;

  explicit SymThirdTensor(Contraction apply) : apply_(std::move(apply)) {}

  [[nodiscard]] Vector apply(const Vector& u, const Vector& v) const { return apply_(u, v); }
  [[nodiscard]] Vector operator()(const Vector& u, const Vector& v) const { return apply_(u, v); }

 private:
  Contraction apply_;
};

/// A first-order Lagrangian system L(q, qdot) = <alpha(q), qdot> - H(q).
///
/// Implementations provide alpha, its Jacobian A(q) = alpha'(q), and H with
/// its first three derivatives. `third_h` has a default implementation by
/// central differences of `hess_h`; shipped systems override it with closed
/// forms.
class DegenerateSystem {
 public:
  virtual ~DegenerateSystem() = default;

  [[nodiscard]] virtual std::size_t dim() const = 0;
  [[nodiscard]] virtual Vector alpha(const Vector& q) const = 0;
  [[nodiscard]] virtual Matrix a_matrix(const Vector& q) const = 0;
  [[nodiscard]] virtual double hamiltonian(const Vector& q) const = 0;
  [[nodiscard]] virtual Vector grad_h(const Vector& q) const = 0;
  [[nodiscard]] virtual Matrix hess_h(const Vector& q) const = 0;
  [[nodiscard]] virtual SymThirdTensor third_h(const Vector& q) const;
  /// If true, alpha(q) = A q with constant A.
  [[nodiscard]] virtual bool alpha_is_linear() const = 0;
  [[nodiscard]] virtual std::string name() const { return "system"; }
};

/// Third-derivative contraction by central differences of `hess_h` with
/// step 1e-5 * (1 + |q|).
[[nodiscard]] SymThirdTensor finite_difference_third(const DegenerateSystem& system, const Vector& q);

/// Time-stamped discrete curve; point j sits at t0 + j * h.
struct Trajectory {
  double t0 = 0.0;
  double h = 1.0;
  std::vector<Vector> points;

  [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
  [[nodiscard]] bool empty() const noexcept { return points.empty(); }
  [[nodiscard]] double time(std::size_t j) const noexcept {
    return t0 + static_cast<double>(j) * h;
  }
  [[nodiscard]] std::size_t dim() const noexcept {
    return points.empty() ? 0 : static_cast<std::size_t>(points.front().size());
  }
};

/// Vector field q -> qdot.
using VectorField = std::function<Vector(const Vector&)>;

/// A(q)^T - A(q).
[[nodiscard]] Matrix a_skew(const DegenerateSystem& system, const Vector& q);

/// f0(q) = A_skew(q)^{-1} H'(q)^T, the exact Euler-Lagrange vector field.
[[nodiscard]] Vector el_field(const DegenerateSystem& system, const Vector& q);

/// f0'(q) f0(q) = A_skew^{-1} H''(q) f0(q). Requires linear alpha.
[[nodiscard]] Vector accel_leading(const DegenerateSystem& system, const Vector& q);

/// Throws NotLinearAlpha unless `system.alpha_is_linear()`.
void require_linear_alpha(const DegenerateSystem& system, const char* where);

/// Throws InvalidArgument on a dimension mismatch.
void require_dim(const DegenerateSystem& system, const Vector& q, const char* where);

}  // namespace degenlag
