#include "degenlag/systems.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>

namespace degenlag {

// ---------------------------------------------------------------------------
// ScalarTerm

ScalarTerm ScalarTerm::negative_cosine() {
  return {[](double x) { return -std::cos(x); }, [](double x) { return std::sin(x); },
          [](double x) { return std::cos(x); }, [](double x) { return -std::sin(x); }};
}

ScalarTerm ScalarTerm::half_square() {
  return {[](double x) { return 0.5 * x * x; }, [](double x) { return x; },
          [](double) { return 1.0; }, [](double) { return 0.0; }};
}

namespace {

// Horner evaluation of the `order`-th derivative of sum_k c[k] x^k.
double polynomial_derivative(const std::vector<double>& c, int order, double x) {
  double acc = 0.0;
  for (int k = static_cast<int>(c.size()) - 1; k >= order; --k) {
    double falling = 1.0;
    for (int i = 0; i < order; ++i) falling *= static_cast<double>(k - i);
    acc = acc * x + falling * c[static_cast<std::size_t>(k)];
  }
  return acc;
}

}  // namespace

ScalarTerm ScalarTerm::polynomial(std::vector<double> coefficients) {
  auto c = std::make_shared<const std::vector<double>>(std::move(coefficients));
  return {[c](double x) { return polynomial_derivative(*c, 0, x); },
          [c](double x) { return polynomial_derivative(*c, 1, x); },
          [c](double x) { return polynomial_derivative(*c, 2, x); },
          [c](double x) { return polynomial_derivative(*c, 3, x); }};
}

// ---------------------------------------------------------------------------
// ToySeparable

ToySeparable::ToySeparable(ScalarTerm u, ScalarTerm v, std::string label)
    : u_(std::move(u)), v_(std::move(v)), label_(std::move(label)) {}

Vector ToySeparable::alpha(const Vector& x) const {
  require_dim(*this, x, "ToySeparable::alpha");
  return Vector{{0.5 * x(1), -0.5 * x(0)}};
}

Matrix ToySeparable::a_matrix(const Vector&) const {
  return Matrix{{0.0, 0.5}, {-0.5, 0.0}};
}

double ToySeparable::hamiltonian(const Vector& x) const {
  require_dim(*this, x, "ToySeparable::hamiltonian");
  return u_.value(x(1)) + v_.value(x(0));
}

Vector ToySeparable::grad_h(const Vector& x) const {
  require_dim(*this, x, "ToySeparable::grad_h");
  return Vector{{v_.d1(x(0)), u_.d1(x(1))}};
}

Matrix ToySeparable::hess_h(const Vector& x) const {
  require_dim(*this, x, "ToySeparable::hess_h");
  return Matrix{{v_.d2(x(0)), 0.0}, {0.0, u_.d2(x(1))}};
}

SymThirdTensor ToySeparable::third_h(const Vector& x) const {
  require_dim(*this, x, "ToySeparable::third_h");
  const double v3 = v_.d3(x(0));
  const double u3 = u_.d3(x(1));
  return SymThirdTensor([v3, u3](const Vector& a, const Vector& b) -> Vector {
    return Vector{{v3 * a(0) * b(0), u3 * a(1) * b(1)}};
  });
}

ToySeparable make_pendulum() {
  return ToySeparable(ScalarTerm::half_square(), ScalarTerm::negative_cosine(), "pendulum");
}

// ---------------------------------------------------------------------------
// PointVortexSystem

namespace {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

Vec2 block(const Vector& z, std::size_t j) { return z.segment<2>(static_cast<Eigen::Index>(2 * j)); }

// Kernel phi(d) = log|d| = log(d.d) / 2 and its derivatives.
Vec2 kernel_grad(const Vec2& d) { return d / d.squaredNorm(); }

Mat2 kernel_hess(const Vec2& d) {
  const double s = d.squaredNorm();
  return (Mat2::Identity() * s - 2.0 * d * d.transpose()) / (s * s);
}

Vec2 kernel_third(const Vec2& d, const Vec2& u, const Vec2& v) {
  const double s = d.squaredNorm();
  const double du = d.dot(u);
  const double dv = d.dot(v);
  return (-2.0 * u.dot(v) * d - 2.0 * (u * dv + v * du)) / (s * s) + 8.0 * du * dv * d / (s * s * s);
}

}  // namespace

PointVortexSystem::PointVortexSystem(std::vector<double> gamma) : gamma_(std::move(gamma)) {
  if (gamma_.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "PointVortexSystem", "need at least two vortices");
  }
  const auto n = static_cast<Eigen::Index>(2 * gamma_.size());
  a_ = Matrix::Zero(n, n);
  for (std::size_t j = 0; j < gamma_.size(); ++j) {
    if (gamma_[j] == 0.0 || !std::isfinite(gamma_[j])) {
      throw Error(ErrorCode::InvalidArgument, "PointVortexSystem",
                  "circulation " + std::to_string(j) + " must be finite and nonzero");
    }
    const auto a = static_cast<Eigen::Index>(2 * j);
    a_(a, a + 1) = -gamma_[j];
    a_(a + 1, a) = gamma_[j];
  }
}

void PointVortexSystem::check_separation(const Vector& z, const char* where) const {
  require_dim(*this, z, where);
  for (std::size_t j = 0; j < gamma_.size(); ++j) {
    for (std::size_t k = j + 1; k < gamma_.size(); ++k) {
      if ((block(z, j) - block(z, k)).norm() < kCollisionRadius) {
        throw Error(ErrorCode::VortexCollision, where,
                    "vortices " + std::to_string(j) + " and " + std::to_string(k) + " collide");
      }
    }
  }
}

Vector PointVortexSystem::alpha(const Vector& z) const {
  require_dim(*this, z, "PointVortexSystem::alpha");
  return a_ * z;
}

Matrix PointVortexSystem::a_matrix(const Vector&) const { return a_; }

double PointVortexSystem::hamiltonian(const Vector& z) const {
  check_separation(z, "PointVortexSystem::hamiltonian");
  double h = 0.0;
  for (std::size_t j = 0; j < gamma_.size(); ++j) {
    for (std::size_t k = j + 1; k < gamma_.size(); ++k) {
      h += gamma_[j] * gamma_[k] * std::log((block(z, j) - block(z, k)).norm());
    }
  }
  return h / std::numbers::pi;
}

Vector PointVortexSystem::grad_h(const Vector& z) const {
  check_separation(z, "PointVortexSystem::grad_h");
  Vector g = Vector::Zero(z.size());
  for (std::size_t j = 0; j < gamma_.size(); ++j) {
    for (std::size_t k = j + 1; k < gamma_.size(); ++k) {
      const Vec2 t = gamma_[j] * gamma_[k] / std::numbers::pi * kernel_grad(block(z, j) - block(z, k));
      g.segment<2>(static_cast<Eigen::Index>(2 * j)) += t;
      g.segment<2>(static_cast<Eigen::Index>(2 * k)) -= t;
    }
  }
  return g;
}

Matrix PointVortexSystem::hess_h(const Vector& z) const {
  check_separation(z, "PointVortexSystem::hess_h");
  Matrix m = Matrix::Zero(z.size(), z.size());
  for (std::size_t j = 0; j < gamma_.size(); ++j) {
    for (std::size_t k = j + 1; k < gamma_.size(); ++k) {
      const Mat2 t = gamma_[j] * gamma_[k] / std::numbers::pi * kernel_hess(block(z, j) - block(z, k));
      const auto a = static_cast<Eigen::Index>(2 * j);
      const auto b = static_cast<Eigen::Index>(2 * k);
      m.block<2, 2>(a, a) += t;
      m.block<2, 2>(b, b) += t;
      m.block<2, 2>(a, b) -= t;
      m.block<2, 2>(b, a) -= t;
    }
  }
  return m;
}

SymThirdTensor PointVortexSystem::third_h(const Vector& z) const {
  check_separation(z, "PointVortexSystem::third_h");
  return SymThirdTensor([gamma = gamma_, z](const Vector& u, const Vector& v) -> Vector {
    Vector out = Vector::Zero(z.size());
    for (std::size_t j = 0; j < gamma.size(); ++j) {
      for (std::size_t k = j + 1; k < gamma.size(); ++k) {
        const Vec2 t = gamma[j] * gamma[k] / std::numbers::pi *
                       kernel_third(block(z, j) - block(z, k), block(u, j) - block(u, k),
                                    block(v, j) - block(v, k));
        out.segment<2>(static_cast<Eigen::Index>(2 * j)) += t;
        out.segment<2>(static_cast<Eigen::Index>(2 * k)) -= t;
      }
    }
    return out;
  });
}

Vector vortex_rhs_complex(const PointVortexSystem& system, const Vector& z) {
  system.check_separation(z, "vortex_rhs_complex");
  using C = std::complex<double>;
  const auto& gamma = system.gamma();
  const std::size_t n = gamma.size();
  std::vector<C> pos(n);
  for (std::size_t j = 0; j < n; ++j) pos[j] = C(z(2 * j), z(2 * j + 1));

  const C prefactor(0.0, 1.0 / (2.0 * std::numbers::pi));
  Vector out(z.size());
  for (std::size_t j = 0; j < n; ++j) {
    C sum(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) sum += gamma[k] / std::conj(pos[j] - pos[k]);
    }
    const C zdot = prefactor * sum;
    out(2 * j) = zdot.real();
    out(2 * j + 1) = zdot.imag();
  }
  return out;
}

VortexInvariants vortex_invariants(const PointVortexSystem& system, const Vector& z) {
  VortexInvariants inv;
  inv.hamiltonian = system.hamiltonian(z);
  const auto& gamma = system.gamma();
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    inv.linear_impulse[0] += gamma[j] * z(2 * j);
    inv.linear_impulse[1] += gamma[j] * z(2 * j + 1);
    inv.angular_impulse += gamma[j] * block(z, j).squaredNorm();
  }
  return inv;
}

// ---------------------------------------------------------------------------
// QuadraticLinearSystem

QuadraticLinearSystem::QuadraticLinearSystem(Matrix a, Matrix s) : a_(std::move(a)), s_(std::move(s)) {
  if (a_.rows() == 0 || a_.rows() != a_.cols() || s_.rows() != a_.rows() || s_.cols() != a_.cols()) {
    throw Error(ErrorCode::InvalidArgument, "QuadraticLinearSystem", "A and S must be square and equal size");
  }
  if (!a_.allFinite() || !s_.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "QuadraticLinearSystem", "non-finite entries");
  }
  if ((s_ - s_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + s_.cwiseAbs().maxCoeff())) {
    throw Error(ErrorCode::InvalidArgument, "QuadraticLinearSystem", "S must be symmetric");
  }
  // Throws SingularAskew if A^T - A is not invertible.
  (void)CheckedLu(a_.transpose() - a_, ErrorCode::SingularAskew, "QuadraticLinearSystem");
}

SymThirdTensor QuadraticLinearSystem::third_h(const Vector& q) const {
  const auto n = q.size();
  return SymThirdTensor([n](const Vector&, const Vector&) -> Vector { return Vector::Zero(n); });
}

}  // namespace degenlag
