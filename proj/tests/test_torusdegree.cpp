#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qms/torusdegree.hpp"

using qms::Complex;
using qms::DenseMatrix;
using qms::Errc;

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const qms::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no qms::Error thrown";
  return Errc::InvalidArgument;
}

}  // namespace

TEST(ClockShift, SmallCases) {
  auto t = qms::clock_shift(2);
  EXPECT_EQ(t.mats[0](0, 1), Complex(1, 0));
  EXPECT_EQ(t.mats[0](1, 0), Complex(1, 0));
  EXPECT_EQ(t.mats[1](0, 0), Complex(1, 0));
  EXPECT_NEAR(std::abs(t.mats[1](1, 1) - Complex(-1, 0)), 0.0, 1e-15);
  auto t4 = qms::clock_shift(4);
  auto psi = qms::group_commutator(t4.mats[0], t4.mats[1]);
  EXPECT_LE(qms::max_abs(psi - Complex(0, 1) * DenseMatrix::identity(4)), 1e-15);
  EXPECT_EQ(code_of([] { qms::clock_shift(1); }), Errc::DimensionTooSmall);
}

TEST(ClockShift, NotUnitaryRejected) {
  auto a = 2.0 * DenseMatrix::identity(3);
  EXPECT_EQ(code_of([&] { qms::make_unitary_tuple({a}); }), Errc::NotUnitary);
}

TEST(Schild, ClockShiftValues) {
  EXPECT_EQ(qms::unitary_schild(qms::make_unitary_tuple({DenseMatrix::identity(5), DenseMatrix::identity(5)})), 0.0);
  EXPECT_NEAR(qms::unitary_schild(qms::clock_shift(8)), 64 * (2 - 2 * std::cos(kPi / 4)), 1e-10);
  EXPECT_NEAR(qms::unitary_schild(qms::clock_shift(8)), 37.49, 0.01);
  for (int n : {16, 32, 64, 128})
    EXPECT_LE(std::abs(qms::unitary_schild(qms::clock_shift(n)) - 4 * kPi * kPi), 200.0 / (n * n));
}

TEST(Eom, ClockShiftIsCritical) {
  for (int n : {2, 3, 8, 16, 64, 128}) EXPECT_LE(qms::torus_eom_residual(qms::clock_shift(n)).max_norm, 1e-13) << n;
  auto id = qms::make_unitary_tuple({DenseMatrix::identity(4), DenseMatrix::identity(4)});
  EXPECT_EQ(qms::torus_eom_residual(id).max_norm, 0.0);
  auto rnd = qms::make_unitary_tuple({qms::random_unitary(8, 1), qms::random_unitary(8, 2)});
  EXPECT_GT(qms::torus_eom_residual(rnd).max_norm, 1e-3);
}

TEST(TorusDegree, ClockShiftFamily) {
  auto r64 = qms::torus_degree(qms::clock_shift(64).mats[0], qms::clock_shift(64).mats[1]);
  EXPECT_EQ(r64.k_estimate, 1);
  EXPECT_NEAR(r64.trace_value.real(), 64 * (std::cos(2 * kPi / 64) - 1), 1e-10);
  EXPECT_NEAR(r64.trace_value.imag(), 64 * std::sin(2 * kPi / 64), 1e-10);
  EXPECT_NEAR(r64.defect, 2 * std::sin(kPi / 64), 1e-10);
  for (int n : {16, 32, 64, 128}) {
    auto t = qms::clock_shift(n);
    auto r = qms::torus_degree(t.mats[0], t.mats[1]);
    EXPECT_EQ(r.k_estimate, 1);
    EXPECT_LE(std::abs(r.trace_value - Complex(0, 2 * kPi)), 20.0 / n);
    auto r2 = qms::torus_degree(t.mats[0], t.mats[1] * t.mats[1]);
    EXPECT_EQ(r2.k_estimate, 2);
  }
  auto id = qms::torus_degree(DenseMatrix::identity(6), DenseMatrix::identity(6));
  EXPECT_EQ(id.k_estimate, 0);
  EXPECT_EQ(id.trace_value, Complex(0, 0));
}

TEST(TorusDegree, ConjugationAndPhaseInvariance) {
  auto t = qms::clock_shift(24);
  auto u = qms::random_unitary(24, 5);
  auto base = qms::torus_degree(t.mats[0], t.mats[1]);
  auto conj = qms::torus_degree(u * t.mats[0] * u.adjoint(), u * t.mats[1] * u.adjoint());
  auto phase = qms::torus_degree(std::polar(1.0, 0.7) * t.mats[0], std::polar(1.0, -2.1) * t.mats[1]);
  EXPECT_EQ(conj.k_estimate, base.k_estimate);
  EXPECT_EQ(phase.k_estimate, base.k_estimate);
  EXPECT_NEAR(std::abs(conj.trace_value - base.trace_value), 0.0, 1e-10);
}

TEST(Fuzzy, ConstructionAndDefect) {
  auto s2 = qms::fuzzy_sphere(2);
  EXPECT_NEAR(s2[0](0, 1).real(), 1 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(s2[2](0, 0).real(), 1 / std::sqrt(3.0), 1e-15);
  for (int n : {2, 5, 25, 60}) {
    auto xs = qms::fuzzy_sphere(n);
    auto cas = xs[0] * xs[0] + xs[1] * xs[1] + xs[2] * xs[2];
    EXPECT_LE(qms::max_abs(cas - DenseMatrix::identity(n)), 1e-13);
    // power iteration converges slowly here: the top singular values cluster
    EXPECT_NEAR(qms::commutator_defect(xs), 2.0 / (n + 1), 1e-5 * 2.0 / (n + 1));
  }
  EXPECT_EQ(code_of([] { qms::fuzzy_sphere(1); }), Errc::DimensionTooSmall);
}

TEST(SphereDegree, FuzzyFamily) {
  auto r = qms::sphere_degree(qms::fuzzy_sphere(101)[0], qms::fuzzy_sphere(101)[1], qms::fuzzy_sphere(101)[2]);
  EXPECT_NEAR(r.trace_value.imag(), 0.66669, 1e-5);
  EXPECT_EQ(r.k_estimate, 1);
  for (int n : {9, 25, 101}) {
    auto xs = qms::fuzzy_sphere(n);
    auto d = qms::sphere_degree(xs[0], xs[1], xs[2]);
    EXPECT_LE(std::abs(d.trace_value.imag() - 2.0 / 3.0), 1.0 / (n * n));
    EXPECT_LE(std::abs(d.trace_value.real()), 1e-12);
    EXPECT_LE(d.defect, 2.1 / n);
    auto swapped = qms::sphere_degree(xs[0], xs[2], xs[1]);
    EXPECT_EQ(swapped.k_estimate, -1);
  }
}

TEST(SphereDegree, CommutingAndConstraint) {
  double a = 0.6, b = 0.8;
  auto x1 = DenseMatrix::diagonal({a, 1.0}), x2 = DenseMatrix::diagonal({b, 0.0}), x3 = DenseMatrix(2);
  auto r = qms::sphere_degree(x1, x2, x3);
  EXPECT_EQ(r.k_estimate, 0);
  EXPECT_EQ(std::abs(r.trace_value), 0.0);
  EXPECT_EQ(code_of([&] { qms::sphere_degree(x1, x1, x3); }), Errc::ConstraintViolated);
}
