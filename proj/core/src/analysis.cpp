#include "degenlag/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

namespace degenlag {

namespace {

Vector rk4_step(const VectorField& field, const Vector& q, double dt) {
  const Vector k1 = field(q);
  const Vector k2 = field(q + 0.5 * dt * k1);
  const Vector k3 = field(q + 0.5 * dt * k2);
  const Vector k4 = field(q + dt * k3);
  return q + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Number of dt-steps needed to reach `span`, tolerant of rounding in span/dt.
std::size_t steps_to_cover(double span, double dt) {
  return static_cast<std::size_t>(std::max(0.0, std::ceil(span / dt - 1e-9)));
}

// Integer ratio h / fine, or 0 if h is not a multiple of fine.
std::size_t integer_ratio(double h, double fine) {
  const double ratio = h / fine;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * ratio) return 0;
  return static_cast<std::size_t>(rounded);
}

}  // namespace

Trajectory reference_solve(const VectorField& field, const Vector& q0, double t_end, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorCode::InvalidArgument, "reference_solve", "dt must be finite and positive");
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorCode::InvalidArgument, "reference_solve", "t_end must be finite and >= 0");
  }
  const std::size_t n = steps_to_cover(t_end, dt);
  Trajectory traj{0.0, dt, {}};
  traj.points.reserve(n + 1);
  traj.points.push_back(q0);
  for (std::size_t j = 0; j < n; ++j) {
    Vector next = rk4_step(field, traj.points.back(), dt);
    if (!all_finite(next)) {
      throw Error(ErrorCode::NonFiniteState, "reference_solve",
                  "state left the finite range at t = " + std::to_string(static_cast<double>(j + 1) * dt));
    }
    traj.points.push_back(std::move(next));
  }
  return traj;
}

Vector reference_flow(const VectorField& field, const Vector& q0, double t, double max_dt) {
  const std::size_t n = std::max<std::size_t>(1, steps_to_cover(t, max_dt));
  const double dt = t / static_cast<double>(n);
  Vector q = q0;
  for (std::size_t j = 0; j < n; ++j) q = rk4_step(field, q, dt);
  if (!all_finite(q)) throw Error(ErrorCode::NonFiniteState, "reference_flow", "state left the finite range");
  return q;
}

LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "fit_loglog", "need at least two paired samples");
  }
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    const double dy = std::log(y[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

double defect_on_curve(MethodId method, const DegenerateSystem& system, const Trajectory& smooth, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "defect_on_curve", "h must be positive");
  const std::size_t stride = integer_ratio(h, smooth.h);
  if (stride == 0) {
    throw Error(ErrorCode::GridMismatch, "defect_on_curve",
                "curve spacing " + std::to_string(smooth.h) + " does not divide h = " + std::to_string(h));
  }
  if (smooth.size() < 2 * stride + 1) {
    throw Error(ErrorCode::TooShort, "defect_on_curve", "curve spans fewer than three h-spaced samples");
  }
  const std::size_t last = smooth.size() - 1;
  // Skip centres within one h-window of either end when there is room.
  const std::size_t margin = last >= 4 * stride ? 2 * stride : stride;
  double worst = 0.0;
  for (std::size_t c = margin; c + margin <= last; ++c) {
    const Vector r = del_residual(method, system, smooth.points[c - stride], smooth.points[c],
                                  smooth.points[c + stride], h);
    worst = std::max(worst, inf_norm(r));
  }
  return worst;
}

DefectReport defect_order(MethodId method, const DegenerateSystem& system, TruncationOrder order,
                          const Vector& q0, double t_end, std::vector<double> h_values, int dt_divisor) {
  if (h_values.size() < 3) throw Error(ErrorCode::InvalidArgument, "defect_order", "need at least three h values");
  if (dt_divisor < 1) throw Error(ErrorCode::InvalidArgument, "defect_order", "dt_divisor must be >= 1");
  std::sort(h_values.begin(), h_values.end(), std::greater<>());
  for (std::size_t i = 0; i < h_values.size(); ++i) {
    if (!(h_values[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "defect_order", "h values must be positive");
    if (i > 0 && h_values[i] == h_values[i - 1]) {
      throw Error(ErrorCode::InvalidArgument, "defect_order", "h values must be distinct");
    }
  }

  // Each h is independent; results are collected in h order.
  std::vector<std::future<double>> jobs;
  jobs.reserve(h_values.size());
  for (const double h : h_values) {
    jobs.push_back(std::async(std::launch::async, [&, h] {
      const Trajectory curve =
          reference_solve(principal_vector_field(method, system, h, order), q0, t_end, h / dt_divisor);
      return defect_on_curve(method, system, curve, h);
    }));
  }
  DefectReport report;
  report.h_values = h_values;
  for (auto& job : jobs) report.defect_norms.push_back(job.get());

  report.degenerate = std::any_of(report.defect_norms.begin(), report.defect_norms.end(),
                                  [](double d) { return !(d > 0.0); });
  if (!report.degenerate) {
    const LogLogFit fit = fit_loglog(report.h_values, report.defect_norms);
    report.slope = fit.slope;
    report.r_squared = fit.r_squared;
  }
  return report;
}

ParasiteDecomposition decompose_parasites(const Trajectory& traj) {
  if (traj.size() < 3) throw Error(ErrorCode::TooShort, "decompose_parasites", "need at least three points");
  ParasiteDecomposition dec;
  const std::size_t n = traj.size() - 2;
  dec.times.reserve(n);
  dec.indices.reserve(n);
  dec.x.reserve(n);
  dec.y.reserve(n);
  dec.amplitude.reserve(n);
  for (std::size_t j = 1; j + 1 < traj.size(); ++j) {
    const Vector& q = traj.points[j];
    Vector x = 0.25 * (traj.points[j - 1] + 2.0 * q + traj.points[j + 1]);
    Vector y = (j % 2 == 0 ? 1.0 : -1.0) * (q - x);
    dec.times.push_back(traj.time(j));
    dec.indices.push_back(j);
    dec.amplitude.push_back(y.norm());
    dec.x.push_back(std::move(x));
    dec.y.push_back(std::move(y));
  }
  return dec;
}

ParasiteDecomposition subtract_baseline(const ParasiteDecomposition& run, const ParasiteDecomposition& baseline) {
  if (run.size() != baseline.size()) {
    throw Error(ErrorCode::GridMismatch, "subtract_baseline", "decompositions differ in length");
  }
  ParasiteDecomposition out = run;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (run.indices[i] != baseline.indices[i] || run.y[i].size() != baseline.y[i].size()) {
      throw Error(ErrorCode::GridMismatch, "subtract_baseline", "decompositions are on different grids");
    }
    out.y[i] -= baseline.y[i];
    out.amplitude[i] = out.y[i].norm();
  }
  return out;
}

Envelope parasite_envelope(const ParasiteDecomposition& dec, std::size_t window) {
  if (window < 1) throw Error(ErrorCode::InvalidArgument, "parasite_envelope", "window must be >= 1");
  if (dec.size() < window) throw Error(ErrorCode::TooShort, "parasite_envelope", "fewer samples than the window");
  Envelope env;
  const std::size_t n = dec.size() - window + 1;
  env.times.reserve(n);
  env.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto first = dec.amplitude.begin() + static_cast<std::ptrdiff_t>(i);
    env.values.push_back(*std::max_element(first, first + static_cast<std::ptrdiff_t>(window)));
    env.times.push_back(dec.times[i + window - 1]);
  }
  return env;
}

double invariant_drift(const Trajectory& traj, const std::function<double(const Vector&)>& functional) {
  if (traj.empty()) throw Error(ErrorCode::TooShort, "invariant_drift", "empty trajectory");
  const double f0 = functional(traj.points.front());
  double worst = 0.0;
  for (const Vector& q : traj.points) worst = std::max(worst, std::abs(functional(q) - f0));
  return worst / (1.0 + std::abs(f0));
}

double error_vs_reference(const Trajectory& traj, const VectorField& field, double dt_ref) {
  if (traj.empty()) return 0.0;
  if (!(dt_ref > 0.0)) throw Error(ErrorCode::InvalidArgument, "error_vs_reference", "dt_ref must be positive");
  const std::size_t substeps = std::max<std::size_t>(1, steps_to_cover(traj.h, dt_ref));
  const double dt = traj.h / static_cast<double>(substeps);
  const double span = traj.h * static_cast<double>(traj.size() - 1);
  const Trajectory ref = reference_solve(field, traj.points.front(), span, dt);
  double worst = 0.0;
  for (std::size_t j = 0; j < traj.size(); ++j) {
    const std::size_t k = std::min(j * substeps, ref.size() - 1);
    worst = std::max(worst, (traj.points[j] - ref.points[k]).norm());
  }
  return worst;
}

Trajectory subsample(const Trajectory& traj, std::size_t stride) {
  if (stride < 1) throw Error(ErrorCode::InvalidArgument, "subsample", "stride must be >= 1");
  Trajectory out{traj.t0, traj.h * static_cast<double>(stride), {}};
  for (std::size_t j = 0; j < traj.size(); j += stride) out.points.push_back(traj.points[j]);
  return out;
}

}  // namespace degenlag
