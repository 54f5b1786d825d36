#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "degenlag/system.hpp"

namespace degenlag {

/// Which variational integrator.
///   Midpoint:    L_d(a, b) = <alpha((a+b)/2), (b-a)/h> - H((a+b)/2)
///   Trapezoidal: L_d(a, b) = <(alpha(a)+alpha(b))/2, (b-a)/h> - (H(a)+H(b))/2
enum class MethodId { Midpoint, Trapezoidal };

[[nodiscard]] std::string_view to_string(MethodId method) noexcept;
[[nodiscard]] std::optional<MethodId> parse_method(std::string_view text) noexcept;

/// How the second point q1 of the two-step recursion is produced.
struct StarterSpec {
  enum class Mode { ReferenceFlow, ExplicitEuler, Perturbed };

  Mode mode = Mode::ReferenceFlow;
  double epsilon = 0.0;
  /// Perturbation direction; empty means the first coordinate unit vector
  /// ("alternating-unit").
  std::optional<Vector> direction;

  [[nodiscard]] static StarterSpec reference_flow() { return {}; }
  [[nodiscard]] static StarterSpec explicit_euler() { return {Mode::ExplicitEuler, 0.0, std::nullopt}; }
  [[nodiscard]] static StarterSpec perturbed(double epsilon, std::optional<Vector> direction = std::nullopt) {
    return {Mode::Perturbed, epsilon, std::move(direction)};
  }

  /// Throws InvalidArgument unless epsilon >= 0 and epsilon == 0 outside Perturbed mode.
  void validate() const;
};

[[nodiscard]] std::string_view to_string(StarterSpec::Mode mode) noexcept;
[[nodiscard]] std::optional<StarterSpec::Mode> parse_starter_mode(std::string_view text) noexcept;

enum class JacobianMode { Analytic, FiniteDifference };

struct NewtonConfig {
  double tol = 1e-12;  ///< on the infinity norm of the DEL residual
  int max_iter = 50;
  JacobianMode jacobian = JacobianMode::Analytic;

  void validate() const;
};

/// Discrete Lagrangian L_d(qa, qb, h). Negative h evaluates the time-reversed scheme.
[[nodiscard]] double discrete_lagrangian(MethodId method, const DegenerateSystem& system,
                                         const Vector& qa, const Vector& qb, double h);

/// Column gradients of L_d with respect to its first and second argument.
[[nodiscard]] Vector discrete_lagrangian_d1(MethodId method, const DegenerateSystem& system,
                                            const Vector& qa, const Vector& qb, double h);
[[nodiscard]] Vector discrete_lagrangian_d2(MethodId method, const DegenerateSystem& system,
                                            const Vector& qa, const Vector& qb, double h);

/// D2 L_d(qm, q, h) + D1 L_d(q, qp, h) as a column vector, written out in
/// closed form for general alpha. Zero iff (qm, q, qp) solves the discrete
/// Euler-Lagrange equation.
[[nodiscard]] Vector del_residual(MethodId method, const DegenerateSystem& system, const Vector& qm,
                                  const Vector& q, const Vector& qp, double h);

/// d del_residual / d qp.
[[nodiscard]] Matrix del_jacobian(MethodId method, const DegenerateSystem& system, const Vector& qm,
                                  const Vector& q, const Vector& qp, double h,
                                  JacobianMode mode = JacobianMode::Analytic);

/// Solves the DEL for q_{j+1}. Trapezoidal with linear alpha uses the explicit
/// update qp = qm + 2h A_skew^{-1} H'(q)^T; everything else runs Newton from
/// the secant guess 2q - qm.
[[nodiscard]] Vector step(MethodId method, const DegenerateSystem& system, const Vector& qm,
                          const Vector& q, double h, const NewtonConfig& cfg = {});

/// Newton-only variant of `step`, used to cross-check the explicit path.
[[nodiscard]] Vector step_newton(MethodId method, const DegenerateSystem& system, const Vector& qm,
                                 const Vector& q, double h, const NewtonConfig& cfg = {});

/// Second point q1 for the recursion.
[[nodiscard]] Vector start(const DegenerateSystem& system, MethodId method, const Vector& q0, double h,
                           const StarterSpec& spec);

struct IntegrationResult {
  Trajectory trajectory;
  /// Set if stepping stopped early; `trajectory` then holds the points
  /// computed before the failure.
  std::optional<Error> error;

  [[nodiscard]] bool ok() const noexcept { return !error.has_value(); }
};

/// q0, start(...), then n_steps - 1 calls to step(...). t0 = 0.
[[nodiscard]] IntegrationResult integrate(MethodId method, const DegenerateSystem& system, const Vector& q0,
                                          double h, std::size_t n_steps, const StarterSpec& starter = {},
                                          const NewtonConfig& cfg = {});

}  // namespace degenlag
