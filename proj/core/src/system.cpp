#include "degenlag/system.hpp"

#include <string>

namespace degenlag {

SymThirdTensor DegenerateSystem::third_h(const Vector& q) const {
  return finite_difference_third(*this, q);
}

SymThirdTensor finite_difference_third(const DegenerateSystem& system, const Vector& q) {
  const double step = 1e-5 * (1.0 + q.norm());
  return SymThirdTensor([&system, q, step](const Vector& u, const Vector& v) -> Vector {
    // d/ds H''(q + s v) u at s = 0
    const Matrix plus = system.hess_h(q + step * v);
    const Matrix minus = system.hess_h(q - step * v);
    return (plus - minus) * u / (2.0 * step);
  });
}

void require_linear_alpha(const DegenerateSystem& system, const char* where) {
  if (!system.alpha_is_linear()) {
    throw Error(ErrorCode::NotLinearAlpha, where, "operation requires alpha(q) = A q");
  }
}

void require_dim(const DegenerateSystem& system, const Vector& q, const char* where) {
  if (static_cast<std::size_t>(q.size()) != system.dim()) {
    throw Error(ErrorCode::InvalidArgument, where,
                "state has dimension " + std::to_string(q.size()) + ", system expects " +
                    std::to_string(system.dim()));
  }
}

Matrix a_skew(const DegenerateSystem& system, const Vector& q) {
  require_dim(system, q, "a_skew");
  const Matrix a = system.a_matrix(q);
  return a.transpose() - a;
}

Vector el_field(const DegenerateSystem& system, const Vector& q) {
  const CheckedLu lu(a_skew(system, q), ErrorCode::SingularAskew, "el_field");
  return lu.solve(system.grad_h(q));
}

Vector accel_leading(const DegenerateSystem& system, const Vector& q) {
  require_linear_alpha(system, "accel_leading");
  const CheckedLu lu(a_skew(system, q), ErrorCode::SingularAskew, "accel_leading");
  const Vector f0 = lu.solve(system.grad_h(q));
  return lu.solve(Vector(system.hess_h(q) * f0));
}

}  // namespace degenlag
