#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "degenlag/linalg.hpp"

namespace degenlag {
namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected degenlag::Error";
  return ErrorCode::InvalidArgument;
}

TEST(CheckedLu, SolvesWellConditionedSystem) {
  const Matrix m{{4.0, 1.0}, {2.0, 3.0}};
  const CheckedLu lu(m, ErrorCode::SingularJacobian, "test");
  const Vector b{{1.0, 2.0}};
  EXPECT_LT((m * lu.solve(b) - b).norm(), 1e-15);
  EXPECT_LT((m * lu.solve(Matrix(Matrix::Identity(2, 2))) - Matrix::Identity(2, 2)).norm(), 1e-15);
  EXPECT_GT(lu.rcond(), 0.1);
}

TEST(CheckedLu, SingularMatrixRaisesRequestedCode) {
  const Matrix m{{1.0, 2.0}, {2.0, 4.0}};
  EXPECT_EQ(code_of([&] { CheckedLu(m, ErrorCode::SingularAskew, "t"); }), ErrorCode::SingularAskew);
  EXPECT_EQ(code_of([&] { CheckedLu(m, ErrorCode::SingularJacobian, "t"); }), ErrorCode::SingularJacobian);
}

TEST(CheckedLu, ConditionNumberThreshold) {
  // cond = 1e15 is rejected, 1e12 accepted.
  EXPECT_EQ(code_of([] { CheckedLu(Matrix{{1.0, 0.0}, {0.0, 1e-15}}, ErrorCode::SingularJacobian, "t"); }),
            ErrorCode::SingularJacobian);
  EXPECT_NO_THROW(CheckedLu(Matrix{{1.0, 0.0}, {0.0, 1e-12}}, ErrorCode::SingularJacobian, "t"));
}

TEST(CheckedLu, RejectsNonSquareAndNonFinite) {
  EXPECT_EQ(code_of([] { CheckedLu(Matrix::Ones(2, 3), ErrorCode::SingularJacobian, "t"); }),
            ErrorCode::InvalidArgument);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(code_of([&] { CheckedLu(bad, ErrorCode::SingularJacobian, "t"); }), ErrorCode::SingularJacobian);
}

TEST(Linalg, FiniteAndNorm) {
  EXPECT_TRUE(all_finite(Vector{{1.0, -2.0}}));
  EXPECT_FALSE(all_finite(Vector{{1.0, std::numeric_limits<double>::infinity()}}));
  EXPECT_EQ(inf_norm(Vector{{1.0, -3.0, 2.0}}), 3.0);
  EXPECT_EQ(inf_norm(Vector()), 0.0);
}

TEST(ErrorType, MessageCarriesLocationAndCode) {
  const Error e(ErrorCode::NewtonDiverged, "step", "residual too large");
  EXPECT_EQ(e.code(), ErrorCode::NewtonDiverged);
  EXPECT_EQ(e.where(), "step");
  const std::string what = e.what();
  EXPECT_NE(what.find("step"), std::string::npos);
  EXPECT_NE(what.find(to_string(ErrorCode::NewtonDiverged)), std::string::npos);
}

}  // namespace
}  // namespace degenlag
