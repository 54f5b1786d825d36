#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "degenlag/integrators.hpp"
#include "degenlag/modified.hpp"
#include "degenlag/system.hpp"

namespace degenlag {

/// Classical fourth-order Runge-Kutta with fixed step `dt` from t = 0.
/// Takes ceil(t_end / dt) steps, so the result covers at least [0, t_end].
/// Throws NonFiniteState if the solution leaves the finite range.
[[nodiscard]] Trajectory reference_solve(const VectorField& field, const Vector& q0, double t_end, double dt);

/// Endpoint of the RK4 flow over time `t`, using the smallest number of equal
/// substeps no longer than `max_dt`.
[[nodiscard]] Vector reference_flow(const VectorField& field, const Vector& q0, double t, double max_dt);

/// Least-squares line through (log x, log y).
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

[[nodiscard]] LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

/// Defect measurements of a truncated modified equation over a ladder of h.
struct DefectReport {
  std::vector<double> h_values;      ///< strictly decreasing
  std::vector<double> defect_norms;  ///< max infinity norm of the DEL residual along the curve
  double slope = 0.0;
  double r_squared = 0.0;
  /// All defects were zero; no fit is possible.
  bool degenerate = false;

  /// Minimum r^2 for a slope to be reported as meaningful.
  static constexpr double kMinRSquared = 0.98;

  [[nodiscard]] bool valid() const noexcept { return !degenerate && r_squared >= kMinRSquared; }
};

/// Max over h-spaced interior triples of |del_residual|_inf along `smooth`.
/// `smooth.h` must divide `h`; triples touching the first and last h-window
/// are skipped when the curve is long enough.
[[nodiscard]] double defect_on_curve(MethodId method, const DegenerateSystem& system, const Trajectory& smooth,
                                     double h);

/// Integrates qdot = principal_field(method, order) at dt = h / dt_divisor for
/// each h and measures the defect of the discrete scheme along it.
[[nodiscard]] DefectReport defect_order(MethodId method, const DegenerateSystem& system, TruncationOrder order,
                                        const Vector& q0, double t_end, std::vector<double> h_values,
                                        int dt_divisor = 100);

/// Smooth/parasitic splitting q_j = x_j + (-1)^j y_j of a discrete trajectory.
struct ParasiteDecomposition {
  std::vector<double> times;
  std::vector<std::size_t> indices;  ///< index j in the source trajectory
  std::vector<Vector> x;
  std::vector<Vector> y;
  std::vector<double> amplitude;  ///< |y_j|_2

  [[nodiscard]] std::size_t size() const noexcept { return times.size(); }
};

/// (1, 2, 1)/4 stencil at interior points:
///   x_j = (q_{j-1} + 2 q_j + q_{j+1}) / 4,  y_j = (-1)^j (q_j - x_j).
[[nodiscard]] ParasiteDecomposition decompose_parasites(const Trajectory& traj);

/// Parasite of `run` relative to `baseline`: y = y_run - y_baseline, x taken
/// from `run`. Removes the stencil bias of the common smooth motion. Both
/// decompositions must come from trajectories on the same time grid.
[[nodiscard]] ParasiteDecomposition subtract_baseline(const ParasiteDecomposition& run,
                                                      const ParasiteDecomposition& baseline);

struct Envelope {
  std::vector<double> times;
  std::vector<double> values;
};

/// Rolling maximum of the amplitude over `window` consecutive samples,
/// stamped with the time of the last sample in each window.
[[nodiscard]] Envelope parasite_envelope(const ParasiteDecomposition& dec, std::size_t window);

/// max_j |F(q_j) - F(q_0)| / (1 + |F(q_0)|)
[[nodiscard]] double invariant_drift(const Trajectory& traj, const std::function<double(const Vector&)>& functional);

/// max_j |q_j - r(t_j)|_2 where r is the RK4 solution of `field` from q_0.
/// The reference step is the largest divisor of traj.h not exceeding dt_ref.
[[nodiscard]] double error_vs_reference(const Trajectory& traj, const VectorField& field, double dt_ref);

/// Every `stride`-th point of `traj`.
[[nodiscard]] Trajectory subsample(const Trajectory& traj, std::size_t stride);

}  // namespace degenlag
