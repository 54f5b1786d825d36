#include "degenlag/integrators.hpp"

#include <cmath>
#include <string>

#include "degenlag/analysis.hpp"

namespace degenlag {

std::string_view to_string(MethodId method) noexcept {
  switch (method) {
    case MethodId::Midpoint: return "midpoint";
    case MethodId::Trapezoidal: return "trapezoidal";
  }
  return "unknown";
}

std::optional<MethodId> parse_method(std::string_view text) noexcept {
  if (text == "midpoint") return MethodId::Midpoint;
  if (text == "trapezoidal") return MethodId::Trapezoidal;
  return std::nullopt;
}

std::string_view to_string(StarterSpec::Mode mode) noexcept {
  switch (mode) {
    case StarterSpec::Mode::ReferenceFlow: return "reference-flow";
    case StarterSpec::Mode::ExplicitEuler: return "explicit-euler";
    case StarterSpec::Mode::Perturbed: return "perturbed";
  }
  return "unknown";
}

std::optional<StarterSpec::Mode> parse_starter_mode(std::string_view text) noexcept {
  if (text == "reference-flow") return StarterSpec::Mode::ReferenceFlow;
  if (text == "explicit-euler") return StarterSpec::Mode::ExplicitEuler;
  if (text == "perturbed") return StarterSpec::Mode::Perturbed;
  return std::nullopt;
}

void StarterSpec::validate() const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::InvalidArgument, "StarterSpec", "epsilon must be finite and >= 0");
  }
  if (mode != Mode::Perturbed && epsilon != 0.0) {
    throw Error(ErrorCode::InvalidArgument, "StarterSpec", "epsilon must be 0 unless mode is perturbed");
  }
}

void NewtonConfig::validate() const {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "NewtonConfig", "tol must be > 0");
  if (max_iter < 1) throw Error(ErrorCode::InvalidArgument, "NewtonConfig", "max_iter must be >= 1");
}

namespace {

void require_nonzero_step(double h, const char* where) {
  if (!(h != 0.0) || !std::isfinite(h)) {
    throw Error(ErrorCode::InvalidArgument, where, "step size must be finite and nonzero");
  }
}

void require_positive_step(double h, const char* where) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(ErrorCode::InvalidArgument, where, "step size must be finite and positive");
  }
}

void require_same_dim(const DegenerateSystem& system, std::initializer_list<const Vector*> vs, const char* where) {
  for (const Vector* v : vs) require_dim(system, *v, where);
}

}  // namespace

double discrete_lagrangian(MethodId method, const DegenerateSystem& system, const Vector& qa, const Vector& qb,
                           double h) {
  require_nonzero_step(h, "discrete_lagrangian");
  require_same_dim(system, {&qa, &qb}, "discrete_lagrangian");
  const Vector velocity = (qb - qa) / h;
  switch (method) {
    case MethodId::Midpoint: {
      const Vector mid = 0.5 * (qa + qb);
      return system.alpha(mid).dot(velocity) - system.hamiltonian(mid);
    }
    case MethodId::Trapezoidal:
      return (0.5 * (system.alpha(qa) + system.alpha(qb))).dot(velocity) -
             0.5 * (system.hamiltonian(qa) + system.hamiltonian(qb));
  }
  return 0.0;
}

Vector discrete_lagrangian_d1(MethodId method, const DegenerateSystem& system, const Vector& qa, const Vector& qb,
                              double h) {
  require_nonzero_step(h, "discrete_lagrangian_d1");
  require_same_dim(system, {&qa, &qb}, "discrete_lagrangian_d1");
  const Vector velocity = (qb - qa) / h;
  switch (method) {
    case MethodId::Midpoint: {
      const Vector mid = 0.5 * (qa + qb);
      return 0.5 * system.a_matrix(mid).transpose() * velocity - system.alpha(mid) / h -
             0.5 * system.grad_h(mid);
    }
    case MethodId::Trapezoidal:
      return 0.5 * system.a_matrix(qa).transpose() * velocity -
             0.5 * (system.alpha(qa) + system.alpha(qb)) / h - 0.5 * system.grad_h(qa);
  }
  return {};
}

Vector discrete_lagrangian_d2(MethodId method, const DegenerateSystem& system, const Vector& qa, const Vector& qb,
                              double h) {
  require_nonzero_step(h, "discrete_lagrangian_d2");
  require_same_dim(system, {&qa, &qb}, "discrete_lagrangian_d2");
  const Vector velocity = (qb - qa) / h;
  switch (method) {
    case MethodId::Midpoint: {
      const Vector mid = 0.5 * (qa + qb);
      return 0.5 * system.a_matrix(mid).transpose() * velocity + system.alpha(mid) / h -
             0.5 * system.grad_h(mid);
    }
    case MethodId::Trapezoidal:
      return 0.5 * system.a_matrix(qb).transpose() * velocity +
             0.5 * (system.alpha(qa) + system.alpha(qb)) / h - 0.5 * system.grad_h(qb);
  }
  return {};
}

Vector del_residual(MethodId method, const DegenerateSystem& system, const Vector& qm, const Vector& q,
                    const Vector& qp, double h) {
  require_nonzero_step(h, "del_residual");
  require_same_dim(system, {&qm, &q, &qp}, "del_residual");
  switch (method) {
    case MethodId::Midpoint: {
      const Vector lo = 0.5 * (qm + q);
      const Vector hi = 0.5 * (q + qp);
      return 0.5 * system.a_matrix(lo).transpose() * (q - qm) / h +
             0.5 * system.a_matrix(hi).transpose() * (qp - q) / h - system.alpha(hi) / h +
             system.alpha(lo) / h - 0.5 * system.grad_h(lo) - 0.5 * system.grad_h(hi);
    }
    case MethodId::Trapezoidal:
      return system.a_matrix(q).transpose() * (qp - qm) / (2.0 * h) -
             (system.alpha(qp) - system.alpha(qm)) / (2.0 * h) - system.grad_h(q);
  }
  return {};
}

Matrix del_jacobian(MethodId method, const DegenerateSystem& system, const Vector& qm, const Vector& q,
                    const Vector& qp, double h, JacobianMode mode) {
  require_nonzero_step(h, "del_jacobian");
  const auto n = qp.size();
  if (mode == JacobianMode::FiniteDifference) {
    Matrix jac(n, n);
    const Vector r0 = del_residual(method, system, qm, q, qp, h);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double dx = 1e-7 * (1.0 + std::abs(qp(k)));
      Vector shifted = qp;
      shifted(k) += dx;
      jac.col(k) = (del_residual(method, system, qm, q, shifted, h) - r0) / dx;
    }
    return jac;
  }

  switch (method) {
    case MethodId::Midpoint: {
      const Vector hi = 0.5 * (q + qp);
      const Matrix a = system.a_matrix(hi);
      Matrix jac = 0.5 * a.transpose() / h - 0.5 * a / h - 0.25 * system.hess_h(hi);
      if (!system.alpha_is_linear()) {
        // Curvature of alpha: column k gets (d A^T / d m_k)(qp - q) / (4h),
        // with dA/dm_k by central differences.
        const Vector dq = qp - q;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double dm = 1e-6 * (1.0 + std::abs(hi(k)));
          Vector plus = hi;
          Vector minus = hi;
          plus(k) += dm;
          minus(k) -= dm;
          const Matrix da = (system.a_matrix(plus) - system.a_matrix(minus)) / (2.0 * dm);
          jac.col(k) += da.transpose() * dq / (4.0 * h);
        }
      }
      return jac;
    }
    case MethodId::Trapezoidal:
      return (system.a_matrix(q).transpose() - system.a_matrix(qp)) / (2.0 * h);
  }
  return {};
}

Vector step_newton(MethodId method, const DegenerateSystem& system, const Vector& qm, const Vector& q, double h,
                   const NewtonConfig& cfg) {
  require_positive_step(h, "step");
  cfg.validate();
  Vector qp = 2.0 * q - qm;
  Vector r = del_residual(method, system, qm, q, qp, h);
  for (int iter = 0; iter < cfg.max_iter && inf_norm(r) > cfg.tol; ++iter) {
    const CheckedLu lu(del_jacobian(method, system, qm, q, qp, h, cfg.jacobian), ErrorCode::SingularJacobian,
                       "step");
    qp -= lu.solve(r);
    if (!all_finite(qp)) throw Error(ErrorCode::NewtonDiverged, "step", "iterate left the finite range");
    r = del_residual(method, system, qm, q, qp, h);
  }
  if (!(inf_norm(r) <= cfg.tol)) {
    throw Error(ErrorCode::NewtonDiverged, "step",
                "residual " + std::to_string(inf_norm(r)) + " above tolerance after " +
                    std::to_string(cfg.max_iter) + " iterations");
  }
  return qp;
}

Vector step(MethodId method, const DegenerateSystem& system, const Vector& qm, const Vector& q, double h,
            const NewtonConfig& cfg) {
  if (method == MethodId::Trapezoidal && system.alpha_is_linear()) {
    require_positive_step(h, "step");
    require_same_dim(system, {&qm, &q}, "step");
    const Vector qp = qm + 2.0 * h * el_field(system, q);
    if (!all_finite(qp)) throw Error(ErrorCode::NonFiniteState, "step", "explicit update is not finite");
    return qp;
  }
  return step_newton(method, system, qm, q, h, cfg);
}

Vector start(const DegenerateSystem& system, MethodId /*method*/, const Vector& q0, double h,
             const StarterSpec& spec) {
  require_positive_step(h, "start");
  require_dim(system, q0, "start");
  spec.validate();
  const VectorField field = [&system](const Vector& q) { return el_field(system, q); };
  switch (spec.mode) {
    case StarterSpec::Mode::ExplicitEuler:
      return q0 + h * field(q0);
    case StarterSpec::Mode::ReferenceFlow:
      return reference_flow(field, q0, h, 1e-3);
    case StarterSpec::Mode::Perturbed: {
      Vector direction = Vector::Zero(q0.size());
      if (spec.direction) {
        require_dim(system, *spec.direction, "start");
        direction = *spec.direction;
      } else {
        direction(0) = 1.0;
      }
      return reference_flow(field, q0, h, 1e-3) + spec.epsilon * direction;
    }
  }
  return q0;
}

IntegrationResult integrate(MethodId method, const DegenerateSystem& system, const Vector& q0, double h,
                            std::size_t n_steps, const StarterSpec& starter, const NewtonConfig& cfg) {
  require_positive_step(h, "integrate");
  if (n_steps < 1) throw Error(ErrorCode::InvalidArgument, "integrate", "n_steps must be >= 1");
  require_dim(system, q0, "integrate");
  cfg.validate();

  IntegrationResult result;
  result.trajectory.t0 = 0.0;
  result.trajectory.h = h;
  auto& points = result.trajectory.points;
  points.reserve(n_steps + 1);
  points.push_back(q0);
  try {
    points.push_back(start(system, method, q0, h, starter));
    for (std::size_t j = 1; j < n_steps; ++j) {
      points.push_back(step(method, system, points[j - 1], points[j], h, cfg));
    }
  } catch (const Error& e) {
    result.error = e;
  }
  return result;
}

}  // namespace degenlag
