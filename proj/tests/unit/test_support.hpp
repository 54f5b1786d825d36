#pragma once

#include <functional>
#include <random>

#include "degenlag/system.hpp"

namespace degenlag::testing {

/// alpha(x, y) = (0, x + x^3/3), H = (x^2 + y^2)/2. Nonlinear alpha with
/// A_skew = [[0, 1 + x^2], [-(1 + x^2), 0]].
class CubicAlphaSystem : public DegenerateSystem {
 public:
  [[nodiscard]] std::size_t dim() const override { return 2; }
  [[nodiscard]] Vector alpha(const Vector& q) const override;
  [[nodiscard]] Matrix a_matrix(const Vector& q) const override;
  [[nodiscard]] double hamiltonian(const Vector& q) const override { return 0.5 * q.squaredNorm(); }
  [[nodiscard]] Vector grad_h(const Vector& q) const override { return q; }
  [[nodiscard]] Matrix hess_h(const Vector&) const override { return Matrix::Identity(2, 2); }
  [[nodiscard]] bool alpha_is_linear() const override { return false; }
  [[nodiscard]] std::string name() const override { return "cubic-alpha"; }
};

inline std::mt19937_64 make_rng(unsigned long long salt = 0) { return std::mt19937_64(0x5eed5eedULL + salt); }

Vector random_vector(std::mt19937_64& rng, Eigen::Index n, double lo, double hi);

/// Central-difference gradient of a scalar function.
Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x, double step = 1e-6);

/// Central-difference Jacobian of a vector function.
Matrix fd_jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x, double step = 1e-6);

}  // namespace degenlag::testing
