#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qms/surfaces.hpp"

using qms::Errc;
using qms::Rational;

namespace {

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

TEST(Catenoid, HandEvaluatedSteps) {
  auto sol = qms::catenoid_build(1.0, 1.0, 2.0, 0.0, -3, 3);
  EXPECT_DOUBLE_EQ(sol.r_at(2), 3.5);
  EXPECT_DOUBLE_EQ(sol.r_at(-1), 2.0);
  EXPECT_DOUBLE_EQ(sol.z_at(1), 0.5);
  EXPECT_DOUBLE_EQ(sol.z_at(-1), -1.0);
}

TEST(Catenoid, EqualStartIsAdmitted) {
  auto sol = qms::catenoid_build(1.0, 1.0, 1.0, 0.0, -2, 4);
  EXPECT_DOUBLE_EQ(sol.r_at(2), 3.0);
  for (int n = 1; n <= 4; ++n) EXPECT_GE(sol.r_at(n), sol.r_at(n - 1));
}

TEST(Catenoid, InputErrors) {
  EXPECT_EQ(code_of([] { qms::catenoid_build(0.0, 1.0, 1.0, 0.0, -2, 2); }), Errc::DegenerateConstant);
  EXPECT_EQ(code_of([] { qms::catenoid_build(1.0, 1.0, 3.5, 0.0, -2, 2); }), Errc::HypothesisViolated);
  EXPECT_EQ(code_of([] { qms::catenoid_build(1.0, 1.0, 0.5, 0.0, -2, 2); }), Errc::HypothesisViolated);
  EXPECT_EQ(code_of([] { qms::catenoid_build(1.0, -1.0, 0.5, 0.0, -2, 2); }), Errc::HypothesisViolated);
  EXPECT_EQ(code_of([] { qms::catenoid_build(1.0, 1.0, 2.0, 0.0, 1, 2); }), Errc::InvalidArgument);
}

TEST(Catenoid, ShapeOnRandomAdmissibleStarts) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    double c = (u(rng) < 0.5 ? -1 : 1) * (0.05 + 2.0 * u(rng));
    double r0 = 0.1 + 3.0 * u(rng);
    double r1 = r0 + u(rng) * 2 * c * c / (r0 * r0);
    auto sol = qms::catenoid_build(c, r0, r1, 0.0, -30, 30);
    for (int n = 1; n <= 30; ++n) ASSERT_GE(sol.r_at(n), sol.r_at(n - 1));
    for (int n = -1; n >= -30; --n) ASSERT_GE(sol.r_at(n), sol.r_at(n + 1));
    for (int n = -29; n <= 30; ++n) ASSERT_GT(c * (sol.z_at(n) - sol.z_at(n - 1)), 0.0);
    ASSERT_GT(*std::min_element(sol.r.begin(), sol.r.end()), 0.0);
  }
}

TEST(Catenoid, ExactResidualVanishes) {
  auto sol = qms::catenoid_build(Rational(1), Rational(1), Rational(3, 2), Rational(0), -10, 10);
  for (int n = -9; n <= 9; ++n) {
    auto [a, b] = qms::catenoid_residual(sol, n);
    EXPECT_EQ(a, 0) << n;
    EXPECT_EQ(b, 0) << n;
  }
  EXPECT_EQ(sol.r_at(2), Rational(2) * Rational(3, 2) - 1 + Rational(2) / Rational(9, 4));
}

TEST(Catenoid, ExactBuildStopsAtBitBudget) {
  EXPECT_EQ(code_of([] {
              qms::catenoid_build(Rational(1), Rational(1), Rational(3, 2), Rational(0), -1, 40, 1 << 16);
            }),
            Errc::PrecisionExhausted);
}

TEST(Catenoid, FloatResidualIsRounding) {
  auto sol = qms::catenoid_build(0.7, 1.3, 1.5, 0.2, -40, 40);
  for (int n = -39; n <= 39; ++n) {
    auto [a, b] = qms::catenoid_residual(sol, n);
    EXPECT_LE(std::abs(a), 1e-11 * sol.r_at(n));
    EXPECT_LE(std::abs(b), 1e-13);
  }
}

TEST(Catenoid, ClassifyExample) {
  auto sol = qms::catenoid_build(1.0, 1.0, 2.0, 0.0, -6, 6);
  auto cls = qms::catenoid_classify(sol);
  EXPECT_EQ(cls.n0, 0);
  EXPECT_NEAR(cls.delta, 0.0, 1e-15);
  EXPECT_FALSE(cls.boundary_warning);
  auto shifted = qms::catenoid_classify(sol.shifted(5));
  EXPECT_EQ(shifted.n0, 5);
  EXPECT_EQ(shifted.delta, cls.delta);
}

TEST(Catenoid, ClassifyDeltaInRange) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    double c = 0.1 + u(rng);
    double r0 = 0.5 + u(rng);
    double r1 = r0 + u(rng) * 2 * c * c / (r0 * r0);
    auto cls = qms::catenoid_classify(qms::catenoid_build(c, r0, r1, 0.0, -20, 20));
    EXPECT_GT(cls.delta, -1.0 - 1e-12);
    EXPECT_LE(cls.delta, 1.0 + 1e-12);
    // the minimum sits at 0 or 1, and at 0 whenever r1 > r0
    EXPECT_TRUE(cls.n0 == 0 || cls.n0 == -1);
  }
}

TEST(Catenoid, ClassifyConstant) {
  qms::CatenoidSolution sol;
  sol.c = 1.0;
  sol.n_min = 0;
  sol.n_max = 3;
  sol.r = {2.0, 2.0, 2.0, 2.0};
  sol.z = {0.0, 0.5, 1.0, 1.5};
  EXPECT_EQ(code_of([&] { qms::catenoid_classify(sol); }), Errc::ConstantSolution);
}

TEST(Catenoid, ClassifyBoundaryWarning) {
  auto sol = qms::catenoid_build(1.0, 1.0, 2.0, 0.0, 0, 6);
  EXPECT_TRUE(qms::catenoid_classify(sol).boundary_warning);
}

TEST(CatenoidClosed, Examples) {
  auto p0 = qms::catenoid_closed(1.0, 0.1, 0);
  EXPECT_EQ(p0.r, 1.0);
  EXPECT_EQ(p0.z, 0.0);
  auto p = qms::catenoid_closed(1.0, 0.1, -1);
  EXPECT_NEAR(p.r, 1.0099669088183917, 1e-14);  // mpmath oracle
  EXPECT_NEAR(p.z, 0.09966930634254616, 1e-14);
  for (int n : {1, 7, 40}) {
    auto a = qms::catenoid_closed(2.0, 0.3, n);
    auto b = qms::catenoid_closed(2.0, 0.3, -n);
    EXPECT_DOUBLE_EQ(a.r, b.r);
    EXPECT_DOUBLE_EQ(a.z, -b.z);
  }
  EXPECT_DOUBLE_EQ(qms::catenoid_closed(1.0, 0.1, -1, -1).z, -p.z);
}

TEST(CatenoidClosed, ContinuumOrderNearThree) {
  double r1 = qms::catenoid_continuum_residual(1.0, 0.01, 100);
  double r2 = qms::catenoid_continuum_residual(1.0, 0.005, 200);
  double order = std::log2(std::abs(r1 / r2));
  EXPECT_GE(order, 2.5);
  EXPECT_LE(order, 3.5);
}

TEST(CatenoidAsymptotic, Examples) {
  EXPECT_NEAR(qms::catenoid_asymptotic(1, 1, 100), 200 - 0.5 * std::log(100.0), 1e-12);
  EXPECT_NEAR(qms::catenoid_asymptotic(1, 1, 100), 197.69741490700595, 1e-10);
  EXPECT_EQ(qms::catenoid_asymptotic(1, 1, -100), qms::catenoid_asymptotic(1, 1, 100));
  EXPECT_EQ(qms::catenoid_asymptotic(0, 1, 10), 20.0);
  EXPECT_EQ(code_of([] { qms::catenoid_asymptotic(1, 1, 0); }), Errc::InvalidArgument);
}

TEST(CatenoidAsymptotic, DifferenceBounded) {
  // The gap settles near a constant; check it stops moving over decades.
  double d3 = qms::catenoid_closed(1, 1, 1000).r - qms::catenoid_asymptotic(1, 1, 1000);
  double d5 = qms::catenoid_closed(1, 1, 100000).r - qms::catenoid_asymptotic(1, 1, 100000);
  EXPECT_LT(std::abs(d5 - d3), 1e-2);
  EXPECT_LT(std::abs(d5), 2.0);
}

TEST(Enneper, SigmaExamples) {
  auto seq = qms::enneper_sigma(0.1, 10);
  EXPECT_EQ(seq.sigma[0], 0.0);
  EXPECT_NEAR(seq.sigma[1], 0.16990580718358324, 1e-14);  // mpmath oracle
  for (std::size_t n = 1; n < seq.sigma.size(); ++n) EXPECT_GT(seq.sigma[n], seq.sigma[n - 1]);
  for (std::size_t n = 0; n + 1 < seq.sigma.size(); ++n) {
    double s0 = seq.sigma[n], s1 = seq.sigma[n + 1];
    EXPECT_NEAR((s1 - s0) * (2 + s0 + s1) * (2 + s0 + s1), 0.8, 1e-13);
  }
}

TEST(Enneper, SigmaOneExpansion) {
  for (double h : {0.05, 0.02, 0.01, 0.001}) {
    double s1 = qms::enneper_sigma(h, 1).sigma[1];
    EXPECT_LE(std::abs(s1 / (2 * h) - 1), 3 * h);
  }
  // second coefficient is -4
  double h = 1e-4;
  double s1 = qms::enneper_sigma(h, 1).sigma[1];
  EXPECT_NEAR((s1 - 2 * h) / (h * h), -4.0, 0.01);
}

TEST(Enneper, ClosedForm) {
  EXPECT_EQ(qms::enneper_sigma_closed(0.1, 0.0, 0), 0.0);
  EXPECT_NEAR(qms::enneper_sigma_closed(0.1, 0.0, 1), 0.15904155308678055, 1e-14);  // mpmath oracle
  // small hbar: first-order Taylor of the cube root gives 2 n hbar
  double h = 1e-6;
  EXPECT_NEAR(qms::enneper_sigma_closed(h, 0.0, 3), 6 * h, 1e-10);
  EXPECT_EQ(code_of([] { qms::enneper_sigma_closed(0.1, 1.0, 1); }), Errc::DomainError);
}

TEST(Helicoid, Profile) {
  EXPECT_EQ(qms::helicoid_profile(0.0), 0.0);
  EXPECT_NEAR(qms::helicoid_profile(1.0), 0.8926677710351815, 1e-14);  // mpmath oracle
  for (double x : {0.3, 1.7, 4.0}) EXPECT_DOUBLE_EQ(qms::helicoid_profile(-x), -qms::helicoid_profile(x));
}

TEST(Helicoid, ResidualOrderFour) {
  EXPECT_EQ(qms::helicoid_residual(0.0, 0.1), 0.0);
  double r1 = qms::helicoid_residual(1.0, 0.1);
  double r2 = qms::helicoid_residual(1.0, 0.05);
  double order = std::log2(std::abs(r1 / r2));
  EXPECT_GE(order, 3.5);
  EXPECT_LE(order, 4.5);
  double prev = 1.0;
  for (double h : {0.1, 0.05, 0.025}) {
    double ratio = std::abs(qms::helicoid_residual(1.0, h)) / (h * h);
    EXPECT_LT(ratio, prev);
    prev = ratio;
  }
}

TEST(Hyperbola, Examples) {
  qms::HyperbolaParams p{1.0, 0.0, 1.0, +1};
  EXPECT_DOUBLE_EQ(qms::hyperbola_r(p, 0), 1.0);
  EXPECT_NEAR(qms::hyperbola_r(p, 1), 0.6180339887498949, 1e-15);
  EXPECT_NEAR(qms::hyperbola_r(p, -100000) / 100000.0, 1.0, 1e-4);
  EXPECT_LE(std::abs(qms::hyperbola_residual(p, 0)), 1e-15);
  qms::HyperbolaParams minus{1.0, 0.0, 1.0, -1};
  EXPECT_EQ(code_of([&] { qms::hyperbola_r(minus, 3); }), Errc::NonPositive);
}

TEST(Hyperbola, ResidualOverGrid) {
  for (double eps : {0.1, 0.5, 1.0, 1.5, 2.0})
    for (double delta : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
      qms::HyperbolaParams p{eps, delta, 0.8, +1};
      for (int n = -500; n <= 500; ++n) ASSERT_LE(std::abs(qms::hyperbola_residual(p, n)), 1e-12);
    }
}

TEST(Hyperbola, ResidualDetectsPerturbation) {
  qms::HyperbolaParams p{1.0, 0.3, 1.2, +1};
  double rn = qms::hyperbola_r(p, 2), rn1 = qms::hyperbola_r(p, 3);
  double res = qms::hyperbola_residual_values(p, rn, rn1 + 1e-6);
  double expected = -(1 + p.c_abs * p.c_abs / (rn1 * rn1)) * 1e-6;
  EXPECT_NEAR(res, expected, 1e-9);
}
