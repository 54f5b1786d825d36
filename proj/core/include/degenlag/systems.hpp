#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "degenlag/system.hpp"

namespace degenlag {

/// A scalar function of one variable with its first three derivatives.
struct ScalarTerm {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
  std::function<double(double)> d3;

  /// -cos(x)
  [[nodiscard]] static ScalarTerm negative_cosine();
  /// x^2 / 2
  [[nodiscard]] static ScalarTerm half_square();
  /// sum_k c[k] x^k
  [[nodiscard]] static ScalarTerm polynomial(std::vector<double> coefficients);
};

/// L = 1/2 (p qdot - q pdot) - U(p) - V(q), state ordered (q, p).
/// alpha(q, p) = (p/2, -q/2), H = U(p) + V(q).
class ToySeparable : public DegenerateSystem {
 public:
  ToySeparable(ScalarTerm u, ScalarTerm v, std::string label = "toy");

  [[nodiscard]] std::size_t dim() const override { return 2; }
  [[nodiscard]] Vector alpha(const Vector& q) const override;
  [[nodiscard]] Matrix a_matrix(const Vector& q) const override;
  [[nodiscard]] double hamiltonian(const Vector& q) const override;
  [[nodiscard]] Vector grad_h(const Vector& q) const override;
  [[nodiscard]] Matrix hess_h(const Vector& q) const override;
  [[nodiscard]] SymThirdTensor third_h(const Vector& q) const override;
  [[nodiscard]] bool alpha_is_linear() const override { return true; }
  [[nodiscard]] std::string name() const override { return label_; }

  [[nodiscard]] const ScalarTerm& u() const noexcept { return u_; }
  [[nodiscard]] const ScalarTerm& v() const noexcept { return v_; }

 private:
  ScalarTerm u_;
  ScalarTerm v_;
  std::string label_;
};

/// V(q) = -cos q, U(p) = p^2 / 2.
[[nodiscard]] ToySeparable make_pendulum();

/// Planar point vortices, state (a_1, b_1, ..., a_n, b_n) with z_j = a_j + i b_j.
/// alpha_j = (-Gamma_j b_j, Gamma_j a_j),
/// H = (1/pi) sum_{j<k} Gamma_j Gamma_k log|z_j - z_k|.
class PointVortexSystem : public DegenerateSystem {
 public:
  /// Vortices closer than this are rejected as a collision.
  static constexpr double kCollisionRadius = 1e-10;

  explicit PointVortexSystem(std::vector<double> gamma);

  [[nodiscard]] std::size_t dim() const override { return 2 * gamma_.size(); }
  [[nodiscard]] Vector alpha(const Vector& z) const override;
  [[nodiscard]] Matrix a_matrix(const Vector& z) const override;
  [[nodiscard]] double hamiltonian(const Vector& z) const override;
  [[nodiscard]] Vector grad_h(const Vector& z) const override;
  [[nodiscard]] Matrix hess_h(const Vector& z) const override;
  [[nodiscard]] SymThirdTensor third_h(const Vector& z) const override;
  [[nodiscard]] bool alpha_is_linear() const override { return true; }
  [[nodiscard]] std::string name() const override { return "vortex"; }

  [[nodiscard]] std::size_t n_vortices() const noexcept { return gamma_.size(); }
  [[nodiscard]] const std::vector<double>& gamma() const noexcept { return gamma_; }

  /// Throws VortexCollision if two vortices are closer than kCollisionRadius.
  void check_separation(const Vector& z, const char* where) const;

 private:
  std::vector<double> gamma_;
  Matrix a_;
};

/// Velocities from the complex form zdot_j = (i / 2 pi) sum_{k != j} Gamma_k / conj(z_j - z_k),
/// encoded as (Re, Im) pairs.
[[nodiscard]] Vector vortex_rhs_complex(const PointVortexSystem& system, const Vector& z);

struct VortexInvariants {
  double hamiltonian = 0.0;
  /// sum_j Gamma_j z_j as (Re, Im)
  std::array<double, 2> linear_impulse{};
  /// sum_j Gamma_j |z_j|^2
  double angular_impulse = 0.0;
};

[[nodiscard]] VortexInvariants vortex_invariants(const PointVortexSystem& system, const Vector& z);

/// alpha(q) = A q with constant A, H(q) = q^T S q / 2. Exactly solvable fixture.
class QuadraticLinearSystem : public DegenerateSystem {
 public:
  QuadraticLinearSystem(Matrix a, Matrix s);

  [[nodiscard]] std::size_t dim() const override { return static_cast<std::size_t>(a_.rows()); }
  [[nodiscard]] Vector alpha(const Vector& q) const override { return a_ * q; }
  [[nodiscard]] Matrix a_matrix(const Vector&) const override { return a_; }
  [[nodiscard]] double hamiltonian(const Vector& q) const override { return 0.5 * q.dot(s_ * q); }
  [[nodiscard]] Vector grad_h(const Vector& q) const override { return s_ * q; }
  [[nodiscard]] Matrix hess_h(const Vector&) const override { return s_; }
  [[nodiscard]] SymThirdTensor third_h(const Vector& q) const override;
  [[nodiscard]] bool alpha_is_linear() const override { return true; }
  [[nodiscard]] std::string name() const override { return "quadratic"; }

  [[nodiscard]] const Matrix& a() const noexcept { return a_; }
  [[nodiscard]] const Matrix& s() const noexcept { return s_; }

 private:
  Matrix a_;
  Matrix s_;
};

}  // namespace degenlag
