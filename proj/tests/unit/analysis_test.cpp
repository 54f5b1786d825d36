#include <gtest/gtest.h>

#include <cmath>

#include "degenlag/analysis.hpp"
#include "test_support.hpp"

namespace degenlag {
namespace {

const VectorField kRotation = [](const Vector& q) { return Vector{{-q(1), q(0)}}; };

TEST(ReferenceSolve, RotationIsAccurate) {
  const Trajectory t = reference_solve(kRotation, Vector{{1.0, 0.0}}, 2.0, 1e-3);
  EXPECT_EQ(t.size(), 2001u);
  EXPECT_LT((t.points.back() - Vector{{std::cos(2.0), std::sin(2.0)}}).norm(), 1e-12);
}

TEST(ReferenceSolve, CoversTheInterval) {
  const Trajectory t = reference_solve(kRotation, Vector{{1.0, 0.0}}, 1.05, 0.1);
  EXPECT_EQ(t.size(), 12u);
  EXPECT_GE(t.time(t.size() - 1), 1.05);
  EXPECT_EQ(reference_solve(kRotation, Vector{{1.0, 0.0}}, 0.0, 0.1).size(), 1u);
}

TEST(ReferenceSolve, Errors) {
  EXPECT_THROW((void)reference_solve(kRotation, Vector{{1.0, 0.0}}, 1.0, 0.0), Error);
  EXPECT_THROW((void)reference_solve(kRotation, Vector{{1.0, 0.0}}, -1.0, 0.1), Error);
  const VectorField blowup = [](const Vector& q) { return Vector(q.array().square()); };
  try {
    (void)reference_solve(blowup, Vector{{1.0}}, 5.0, 0.01);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFiniteState);
  }
}

TEST(ReferenceFlow, EndpointAccuracy) {
  const Vector q = reference_flow(kRotation, Vector{{1.0, 0.0}}, 0.35, 1e-3);
  EXPECT_LT((q - Vector{{std::cos(0.35), std::sin(0.35)}}).norm(), 1e-14);
}

TEST(LogLogFit, RecoversPowerLaw) {
  const std::vector<double> x{0.2, 0.1, 0.05, 0.025};
  std::vector<double> y;
  for (const double v : x) y.push_back(3.0 * std::pow(v, 4.0));
  const LogLogFit fit = fit_loglog(x, y);
  EXPECT_NEAR(fit.slope, 4.0, 1e-12);
  EXPECT_NEAR(std::exp(fit.intercept), 3.0, 1e-10);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
  EXPECT_THROW((void)fit_loglog({1.0}, {1.0}), Error);
}

TEST(DefectOrder, PendulumSlopes) {
  const ToySeparable p = make_pendulum();
  const std::vector<double> hs{0.2, 0.1, 0.05, 0.025};
  for (const MethodId m : {MethodId::Midpoint, MethodId::Trapezoidal}) {
    const DefectReport zero = defect_order(m, p, TruncationOrder::Zero, Vector{{1.5, 0.0}}, 2.0, hs);
    const DefectReport two = defect_order(m, p, TruncationOrder::Two, Vector{{1.5, 0.0}}, 2.0, hs);
    EXPECT_TRUE(zero.valid());
    EXPECT_TRUE(two.valid());
    EXPECT_NEAR(zero.slope, 2.0, 0.2);
    EXPECT_NEAR(two.slope, 4.0, 0.4);
    EXPECT_EQ(zero.h_values, hs);
  }
}

TEST(DefectOrder, ZeroHamiltonianIsDegenerate) {
  const QuadraticLinearSystem free(Matrix{{0.0, 0.5}, {-0.5, 0.0}}, Matrix::Zero(2, 2));
  const DefectReport r =
      defect_order(MethodId::Trapezoidal, free, TruncationOrder::Zero, Vector{{1.0, 0.0}}, 1.0, {0.1, 0.05, 0.2});
  EXPECT_TRUE(r.degenerate);
  EXPECT_FALSE(r.valid());
  EXPECT_EQ(r.h_values.front(), 0.2);
}

TEST(DefectOrder, InputChecks) {
  const ToySeparable p = make_pendulum();
  const Vector q0{{1.0, 0.0}};
  EXPECT_THROW((void)defect_order(MethodId::Midpoint, p, TruncationOrder::Zero, q0, 1.0, {0.1, 0.05}), Error);
  EXPECT_THROW((void)defect_order(MethodId::Midpoint, p, TruncationOrder::Zero, q0, 1.0, {0.1, 0.1, 0.05}), Error);
  EXPECT_THROW((void)defect_order(MethodId::Midpoint, p, TruncationOrder::Zero, q0, 1.0, {0.1, -0.1, 0.05}), Error);
}

TEST(DefectOnCurve, GridChecks) {
  const ToySeparable p = make_pendulum();
  const Trajectory curve = reference_solve(kRotation, Vector{{1.0, 0.0}}, 1.0, 0.01);
  try {
    (void)defect_on_curve(MethodId::Midpoint, p, curve, 0.015);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GridMismatch);
  }
  try {
    (void)defect_on_curve(MethodId::Midpoint, p, curve, 0.6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooShort);
  }
}

TEST(DecomposeParasites, StencilIdentities) {
  Trajectory t{0.0, 0.5, {}};
  auto rng = testing::make_rng(31);
  for (int j = 0; j < 12; ++j) t.points.push_back(testing::random_vector(rng, 3, -1.0, 1.0));
  const ParasiteDecomposition d = decompose_parasites(t);
  ASSERT_EQ(d.size(), 10u);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const std::size_t j = d.indices[i];
    EXPECT_EQ(j, i + 1);
    const double sign = j % 2 == 0 ? 1.0 : -1.0;
    EXPECT_LT((d.x[i] + sign * d.y[i] - t.points[j]).norm(), 1e-15);
    EXPECT_DOUBLE_EQ(d.amplitude[i], d.y[i].norm());
    EXPECT_DOUBLE_EQ(d.times[i], 0.5 * static_cast<double>(j));
  }
}

TEST(DecomposeParasites, PureModes) {
  Trajectory smooth{0.0, 0.1, {}};
  Trajectory alternating{0.0, 0.1, {}};
  const Vector c{{1.0, -2.0}};
  const Vector a{{0.3, 0.1}};
  for (int j = 0; j < 8; ++j) {
    smooth.points.push_back(c + 0.1 * j * a);  // linear: no stencil bias
    alternating.points.push_back(c + (j % 2 == 0 ? 1.0 : -1.0) * a);
  }
  for (double amp : decompose_parasites(smooth).amplitude) EXPECT_LT(amp, 1e-15);
  const ParasiteDecomposition d = decompose_parasites(alternating);
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_LT((d.y[i] - a).norm(), 1e-15);
    EXPECT_LT((d.x[i] - c).norm(), 1e-15);
  }
  EXPECT_THROW((void)decompose_parasites(Trajectory{0.0, 0.1, {c, c}}), Error);
}

TEST(ParasiteEnvelope, RollingMaximum) {
  ParasiteDecomposition d;
  d.times = {0.0, 1.0, 2.0};
  d.amplitude = {1.0, 2.0, 3.0};
  const Envelope e = parasite_envelope(d, 2);
  EXPECT_EQ(e.values, (std::vector<double>{2.0, 3.0}));
  EXPECT_EQ(e.times, (std::vector<double>{1.0, 2.0}));

  d.amplitude = {0.0, 0.0, 0.0};
  for (double v : parasite_envelope(d, 2).values) EXPECT_EQ(v, 0.0);
  d.amplitude = {0.4, 0.4, 0.4};
  for (double v : parasite_envelope(d, 1).values) EXPECT_EQ(v, 0.4);
  EXPECT_THROW((void)parasite_envelope(d, 0), Error);
  EXPECT_THROW((void)parasite_envelope(d, 4), Error);
}

TEST(SubtractBaseline, RemovesCommonBias) {
  const ToySeparable p = make_pendulum();
  const Vector q0{{1.5, 0.0}};
  const auto base = decompose_parasites(integrate(MethodId::Midpoint, p, q0, 0.35, 40).trajectory);
  const auto same = subtract_baseline(base, base);
  for (double a : same.amplitude) EXPECT_EQ(a, 0.0);
  const auto kicked =
      decompose_parasites(integrate(MethodId::Midpoint, p, q0, 0.35, 40, StarterSpec::perturbed(1e-3)).trajectory);
  const auto diff = subtract_baseline(kicked, base);
  // An e1 kick on q1 splits into equal smooth and parasitic parts.
  EXPECT_NEAR(diff.amplitude.front(), 5e-4, 1e-4);
  const auto shorter = decompose_parasites(integrate(MethodId::Midpoint, p, q0, 0.35, 30).trajectory);
  EXPECT_THROW((void)subtract_baseline(kicked, shorter), Error);
}

TEST(InvariantDrift, RelativeMaximum) {
  Trajectory t{0.0, 1.0, {Vector{{1.0}}, Vector{{1.5}}, Vector{{0.5}}}};
  EXPECT_NEAR(invariant_drift(t, [](const Vector& q) { return q(0); }), 0.5 / 2.0, 1e-15);
}

TEST(ErrorVsReference, ExactTrajectoryHasTinyError) {
  const Trajectory exact = subsample(reference_solve(kRotation, Vector{{1.0, 0.0}}, 1.0, 0.001), 100);
  EXPECT_EQ(exact.size(), 11u);
  EXPECT_NEAR(exact.h, 0.1, 1e-15);
  EXPECT_LT(error_vs_reference(exact, kRotation, 0.001), 1e-12);
  Trajectory off = exact;
  off.points[5](0) += 1e-3;
  EXPECT_NEAR(error_vs_reference(off, kRotation, 0.001), 1e-3, 1e-9);
}

TEST(Subsample, Stride) {
  Trajectory t{0.0, 0.1, {}};
  for (int j = 0; j < 7; ++j) t.points.push_back(Vector{{double(j)}});
  const Trajectory s = subsample(t, 3);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.points[2](0), 6.0);
  EXPECT_THROW((void)subsample(t, 0), Error);
}

}  // namespace
}  // namespace degenlag
