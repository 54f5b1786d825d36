#include "test_support.hpp"

namespace degenlag::testing {

Vector CubicAlphaSystem::alpha(const Vector& q) const {
  return Vector{{0.0, q(0) + q(0) * q(0) * q(0) / 3.0}};
}

Matrix CubicAlphaSystem::a_matrix(const Vector& q) const {
  Matrix a = Matrix::Zero(2, 2);
  a(1, 0) = 1.0 + q(0) * q(0);
  return a;
}

Vector random_vector(std::mt19937_64& rng, Eigen::Index n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Vector v(n);
  for (Eigen::Index k = 0; k < n; ++k) v(k) = dist(rng);
  return v;
}

Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x, double step) {
  Vector g(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    Vector plus = x;
    Vector minus = x;
    plus(k) += step;
    minus(k) -= step;
    g(k) = (f(plus) - f(minus)) / (2.0 * step);
  }
  return g;
}

Matrix fd_jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x, double step) {
  const Vector f0 = f(x);
  Matrix j(f0.size(), x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    Vector plus = x;
    Vector minus = x;
    plus(k) += step;
    minus(k) -= step;
    j.col(k) = (f(plus) - f(minus)) / (2.0 * step);
  }
  return j;
}

}  // namespace degenlag::testing
