#pragma once

#include <optional>
#include <string_view>

#include "degenlag/integrators.hpp"
#include "degenlag/system.hpp"
#include "degenlag/systems.hpp"

namespace degenlag {

/// Powers of h kept in a truncated modified equation beyond the leading
/// order. Only even powers occur for the two symmetric methods.
enum class TruncationOrder { Zero, Two };

[[nodiscard]] std::string_view to_string(TruncationOrder order) noexcept;
[[nodiscard]] std::optional<TruncationOrder> parse_truncation(std::string_view text) noexcept;

/// Smooth part x and parasitic part y, q_j = x_j + (-1)^j y_j.
struct DoubledState {
  Vector x;
  Vector y;
};

/// A pair of vectors indexed like a DoubledState: residuals or velocities.
struct DoubledVector {
  Vector x;
  Vector y;
};

/// Modified Lagrangian truncated after h^3 (linear alpha only):
///   midpoint:    qdot^T A q - H + h^2/24 (-qdot^T H'' qdot - 2 H' A_skew^{-1} H'' qdot)
///   trapezoidal: qdot^T A q - H + h^2/12 (-2 qdot^T H'' qdot - H' A_skew^{-1} H'' qdot)
[[nodiscard]] double modified_lagrangian_order2(MethodId method, const DegenerateSystem& system, const Vector& q,
                                                const Vector& qdot, double h);

/// The h^2 coefficient f2 of the principal modified vector field, obtained by
/// solving the Euler-Lagrange equation of the modified Lagrangian for qdot
/// perturbatively:
///   f2 = -A_skew^{-1} (l_q - l_{qdot q} f0 - l_{qdot qdot} f0' f0)
/// where l is the h^2 coefficient of the modified Lagrangian, evaluated at
/// qdot = f0(q). Linear alpha only.
[[nodiscard]] Vector principal_correction(MethodId method, const DegenerateSystem& system, const Vector& q);

/// f0 (order Zero) or f0 + h^2 f2 (order Two).
[[nodiscard]] Vector principal_field(MethodId method, const DegenerateSystem& system, const Vector& q, double h,
                                     TruncationOrder order);

/// `principal_field` bound into a VectorField. The system must outlive it.
[[nodiscard]] VectorField principal_vector_field(MethodId method, const DegenerateSystem& system, double h,
                                                 TruncationOrder order);

/// Closed-form order-h^2 principal modified equations of the separable toy
/// problem, returned as (qdot, pdot).
[[nodiscard]] Vector toy_principal_field_closed_form(MethodId method, const ToySeparable& toy, double q, double p,
                                                     double h);

/// Ldouble = 1/2 L_d(xa + ya, xb - yb) + 1/2 L_d(xa - ya, xb + yb).
[[nodiscard]] double doubled_discrete_lagrangian(MethodId method, const DegenerateSystem& system, const Vector& xa,
                                                 const Vector& ya, const Vector& xb, const Vector& yb, double h);

/// Discrete Euler-Lagrange residual of the doubled Lagrangian at the middle
/// state, split into its x and y components. Built from the partial
/// derivatives of L_d.
[[nodiscard]] DoubledVector doubled_del_residual(MethodId method, const DegenerateSystem& system,
                                                 const DoubledState& prev, const DoubledState& mid,
                                                 const DoubledState& next, double h);

/// The same residual assembled from `del_residual` on the two recombined
/// curves q+- = x +- (-1)^j y. With the middle index even it equals
/// (R+ + R-)/2 for x and (R+ - R-)/2 for y; an odd middle index flips the y sign.
[[nodiscard]] DoubledVector recombined_del_residual(MethodId method, const DegenerateSystem& system,
                                                    const DoubledState& prev, const DoubledState& mid,
                                                    const DoubledState& next, double h, bool middle_even = true);

/// Solves the doubled DEL for the next (x, y) by Newton iteration with a
/// finite-difference Jacobian.
[[nodiscard]] DoubledState doubled_step(MethodId method, const DegenerateSystem& system, const DoubledState& prev,
                                        const DoubledState& mid, double h, const NewtonConfig& cfg = {});

/// Leading-order full system of modified equations (linear alpha):
///   midpoint:    xdot = f0(x), ydot = 0
///   trapezoidal: xdot = A_skew^{-1} (H'(x+y) + H'(x-y))^T / 2,
///                ydot = A_skew^{-1} (H'(x-y) - H'(x+y))^T / 2
[[nodiscard]] DoubledVector doubled_field_order0(MethodId method, const DegenerateSystem& system,
                                                 const DoubledState& s);

/// -A_skew^{-1} H''(x): the linearized parasite dynamics ydot = P(x) y.
[[nodiscard]] Matrix parasite_matrix(const DegenerateSystem& system, const Vector& x);

/// Largest real part in the spectrum of parasite_matrix(x). Positive values
/// indicate locally growing parasites.
[[nodiscard]] double parasite_growth_indicator(const DegenerateSystem& system, const Vector& x);

}  // namespace degenlag
