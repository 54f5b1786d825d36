#include "degenlag/modified.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

namespace degenlag {

std::string_view to_string(TruncationOrder order) noexcept {
  return order == TruncationOrder::Zero ? "zero" : "two";
}

std::optional<TruncationOrder> parse_truncation(std::string_view text) noexcept {
  if (text == "zero" || text == "0") return TruncationOrder::Zero;
  if (text == "two" || text == "2") return TruncationOrder::Two;
  return std::nullopt;
}

namespace {

// The h^2 coefficient of both modified Lagrangians has the shape
//   l(q, qdot) = -a qdot^T S qdot - b g^T B S qdot
// with g = H'(q)^T, S = H''(q), B = A_skew^{-1}.
struct CorrectionWeights {
  double a;
  double b;
};

CorrectionWeights weights(MethodId method) {
  switch (method) {
    case MethodId::Midpoint: return {1.0 / 24.0, 2.0 / 24.0};
    case MethodId::Trapezoidal: return {2.0 / 12.0, 1.0 / 12.0};
  }
  return {0.0, 0.0};
}

// Partial derivatives of l at a fixed q, as closed forms in B, g, S, H'''.
class CorrectionPartials {
 public:
  CorrectionPartials(MethodId method, const DegenerateSystem& system, const Vector& q)
      : w_(weights(method)),
        b_(CheckedLu(a_skew(system, q), ErrorCode::SingularAskew, "principal_field")
               .solve(Matrix(Matrix::Identity(q.size(), q.size())))),
        g_(system.grad_h(q)),
        s_(system.hess_h(q)),
        t_(system.third_h(q)),
        bt_g_(b_.transpose() * g_) {}

  [[nodiscard]] const Matrix& b() const { return b_; }
  [[nodiscard]] const Vector& g() const { return g_; }
  [[nodiscard]] const Matrix& s() const { return s_; }

  // dl/dq
  [[nodiscard]] Vector l_q(const Vector& qdot) const {
    return -w_.a * t_(qdot, qdot) - w_.b * (s_ * (b_ * (s_ * qdot)) + t_(bt_g_, qdot));
  }
  // (d/dq dl/dqdot) w
  [[nodiscard]] Vector l_qdot_q(const Vector& qdot, const Vector& w) const {
    return -2.0 * w_.a * t_(qdot, w) - w_.b * (t_(bt_g_, w) + s_ * (b_.transpose() * (s_ * w)));
  }
  // (d/dqdot dl/dqdot) w
  [[nodiscard]] Vector l_qdot_qdot(const Vector& w) const { return -2.0 * w_.a * (s_ * w); }

 private:
  CorrectionWeights w_;
  Matrix b_;
  Vector g_;
  Matrix s_;
  SymThirdTensor t_;
  Vector bt_g_;
};

}  // namespace

double modified_lagrangian_order2(MethodId method, const DegenerateSystem& system, const Vector& q,
                                  const Vector& qdot, double h) {
  require_linear_alpha(system, "modified_lagrangian_order2");
  require_dim(system, q, "modified_lagrangian_order2");
  require_dim(system, qdot, "modified_lagrangian_order2");
  const auto [a, b] = weights(method);
  const Matrix s = system.hess_h(q);
  const Vector g = system.grad_h(q);
  const CheckedLu lu(a_skew(system, q), ErrorCode::SingularAskew, "modified_lagrangian_order2");
  // g^T B S qdot with B = A_skew^{-1}
  const double cross = g.dot(lu.solve(Vector(s * qdot)));
  const double correction = -a * qdot.dot(s * qdot) - b * cross;
  return qdot.dot(system.a_matrix(q) * q) - system.hamiltonian(q) + h * h * correction;
}

Vector principal_correction(MethodId method, const DegenerateSystem& system, const Vector& q) {
  require_linear_alpha(system, "principal_field");
  require_dim(system, q, "principal_field");
  const CorrectionPartials l(method, system, q);
  const Vector f0 = l.b() * l.g();
  const Vector accel = l.b() * (l.s() * f0);
  const Vector residual = l.l_q(f0) - l.l_qdot_q(f0, f0) - l.l_qdot_qdot(accel);
  return -(l.b() * residual);
}

Vector principal_field(MethodId method, const DegenerateSystem& system, const Vector& q, double h,
                       TruncationOrder order) {
  if (order == TruncationOrder::Zero) return el_field(system, q);
  return el_field(system, q) + h * h * principal_correction(method, system, q);
}

VectorField principal_vector_field(MethodId method, const DegenerateSystem& system, double h,
                                   TruncationOrder order) {
  return [method, &system, h, order](const Vector& q) { return principal_field(method, system, q, h, order); };
}

Vector toy_principal_field_closed_form(MethodId method, const ToySeparable& toy, double q, double p, double h) {
  const double u1 = toy.u().d1(p);
  const double u2 = toy.u().d2(p);
  const double u3 = toy.u().d3(p);
  const double v1 = toy.v().d1(q);
  const double v2 = toy.v().d2(q);
  const double v3 = toy.v().d3(q);
  const double h2 = h * h;
  switch (method) {
    case MethodId::Midpoint:
      return Vector{{u1 - h2 / 24.0 * (u3 * v1 * v1 + 2.0 * u2 * v2 * u1),
                     -v1 + h2 / 24.0 * (v3 * u1 * u1 + 2.0 * v2 * u2 * v1)}};
    case MethodId::Trapezoidal:
      return Vector{{u1 - h2 / 6.0 * (u3 * v1 * v1 - u2 * v2 * u1),
                     -v1 + h2 / 6.0 * (v3 * u1 * u1 - v2 * u2 * v1)}};
  }
  return {};
}

double doubled_discrete_lagrangian(MethodId method, const DegenerateSystem& system, const Vector& xa,
                                   const Vector& ya, const Vector& xb, const Vector& yb, double h) {
  return 0.5 * discrete_lagrangian(method, system, xa + ya, xb - yb, h) +
         0.5 * discrete_lagrangian(method, system, xa - ya, xb + yb, h);
}

DoubledVector doubled_del_residual(MethodId method, const DegenerateSystem& system, const DoubledState& prev,
                                   const DoubledState& mid, const DoubledState& next, double h) {
  // Derivatives of the four discrete-Lagrangian terms that contain (x_j, y_j).
  const Vector d2_plus = discrete_lagrangian_d2(method, system, prev.x + prev.y, mid.x - mid.y, h);
  const Vector d2_minus = discrete_lagrangian_d2(method, system, prev.x - prev.y, mid.x + mid.y, h);
  const Vector d1_plus = discrete_lagrangian_d1(method, system, mid.x + mid.y, next.x - next.y, h);
  const Vector d1_minus = discrete_lagrangian_d1(method, system, mid.x - mid.y, next.x + next.y, h);
  return {0.5 * (d2_plus + d2_minus + d1_plus + d1_minus), 0.5 * (-d2_plus + d2_minus + d1_plus - d1_minus)};
}

DoubledVector recombined_del_residual(MethodId method, const DegenerateSystem& system, const DoubledState& prev,
                                      const DoubledState& mid, const DoubledState& next, double h,
                                      bool middle_even) {
  // Middle index even: q+_{j-1} = x - y, q+_j = x + y, q+_{j+1} = x - y.
  const double sign = middle_even ? 1.0 : -1.0;
  const Vector r_plus = del_residual(method, system, prev.x - sign * prev.y, mid.x + sign * mid.y,
                                     next.x - sign * next.y, h);
  const Vector r_minus = del_residual(method, system, prev.x + sign * prev.y, mid.x - sign * mid.y,
                                      next.x + sign * next.y, h);
  return {0.5 * (r_plus + r_minus), sign * 0.5 * (r_plus - r_minus)};
}

DoubledState doubled_step(MethodId method, const DegenerateSystem& system, const DoubledState& prev,
                          const DoubledState& mid, double h, const NewtonConfig& cfg) {
  cfg.validate();
  const auto n = mid.x.size();
  auto residual = [&](const Vector& z) {
    const DoubledState next{z.head(n), z.tail(n)};
    const DoubledVector r = doubled_del_residual(method, system, prev, mid, next, h);
    Vector out(2 * n);
    out << r.x, r.y;
    return out;
  };
  Vector z(2 * n);
  z << 2.0 * mid.x - prev.x, 2.0 * mid.y - prev.y;
  Vector r = residual(z);
  for (int iter = 0; iter < cfg.max_iter && inf_norm(r) > cfg.tol; ++iter) {
    Matrix jac(2 * n, 2 * n);
    for (Eigen::Index k = 0; k < 2 * n; ++k) {
      const double dz = 1e-7 * (1.0 + std::abs(z(k)));
      Vector shifted = z;
      shifted(k) += dz;
      jac.col(k) = (residual(shifted) - r) / dz;
    }
    z -= CheckedLu(jac, ErrorCode::SingularJacobian, "doubled_step").solve(r);
    r = residual(z);
  }
  if (!(inf_norm(r) <= cfg.tol)) {
    throw Error(ErrorCode::NewtonDiverged, "doubled_step",
                "residual " + std::to_string(inf_norm(r)) + " above tolerance");
  }
  return {z.head(n), z.tail(n)};
}

DoubledVector doubled_field_order0(MethodId method, const DegenerateSystem& system, const DoubledState& s) {
  require_linear_alpha(system, "doubled_field_order0");
  require_dim(system, s.x, "doubled_field_order0");
  require_dim(system, s.y, "doubled_field_order0");
  switch (method) {
    case MethodId::Midpoint:
      return {el_field(system, s.x), Vector::Zero(s.y.size())};
    case MethodId::Trapezoidal: {
      const CheckedLu lu(a_skew(system, s.x), ErrorCode::SingularAskew, "doubled_field_order0");
      const Vector g_plus = system.grad_h(s.x + s.y);
      const Vector g_minus = system.grad_h(s.x - s.y);
      return {lu.solve(Vector(0.5 * (g_plus + g_minus))), lu.solve(Vector(0.5 * (g_minus - g_plus)))};
    }
  }
  return {};
}

Matrix parasite_matrix(const DegenerateSystem& system, const Vector& x) {
  require_linear_alpha(system, "parasite_matrix");
  const CheckedLu lu(a_skew(system, x), ErrorCode::SingularAskew, "parasite_matrix");
  return -lu.solve(system.hess_h(x));
}

double parasite_growth_indicator(const DegenerateSystem& system, const Vector& x) {
  const Matrix p = parasite_matrix(system, x);
  const auto n = p.rows();
  // Hessenberg reduction followed by shifted Francis QR.
  Eigen::EigenSolver<Matrix> solver;
  solver.setMaxIterations(static_cast<Eigen::Index>(100) * n * n);
  solver.compute(p, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenNoConvergence, "parasite_growth_indicator",
                "QR iteration did not converge in " + std::to_string(100 * n * n) + " iterations");
  }
  return solver.eigenvalues().real().maxCoeff();
}

}  // namespace degenlag
