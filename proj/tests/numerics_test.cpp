#include "tailbound/numerics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tailbound/error.hpp"

namespace tailbound {
namespace {

// -e^{-x}(x^2 + 2x + 2) differentiates to x^2 e^{-x}
double second_moment_antiderivative(double x) { return -std::exp(-x) * (x * x + 2 * x + 2); }

TEST(QuadratureTest, UnitExponentialIntegratesToOne) {
  EXPECT_NEAR(integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0), 1.0, 1e-9);
}

TEST(QuadratureTest, RestrictedMeanAtHighQuantile) {
  const double nu = 6.908;
  const double expected = std::exp(-nu) * (1 + nu);
  EXPECT_NEAR(expected, 7.906e-3, 5e-7);
  EXPECT_NEAR(integrate_semi_infinite([](double x) { return x * std::exp(-x); }, nu), expected,
              1e-10);
}

TEST(QuadratureTest, AntiderivativeOracleIsConsistent) {
  for (double x : {0.5, 2.0, 5.0}) {
    const double h = 1e-5;
    const double derivative =
        (second_moment_antiderivative(x + h) - second_moment_antiderivative(x - h)) / (2 * h);
    EXPECT_NEAR(derivative, x * x * std::exp(-x), 1e-8);
  }
}

TEST(QuadratureTest, SecondRestrictedMoment) {
  const double expected = -second_moment_antiderivative(2.0);
  EXPECT_NEAR(expected, 1.353352832366127, 1e-14);
  EXPECT_NEAR(integrate_semi_infinite([](double x) { return x * x * std::exp(-x); }, 2.0),
              expected, 1e-9);
}

TEST(QuadratureTest, MatchesClosedFormOnGrid) {
  for (int i = 0; i <= 16; ++i) {
    const double nu = 0.5 * i;
    const double exact = std::exp(-nu) * (1 + nu);
    const double got = integrate_semi_infinite([](double x) { return x * std::exp(-x); }, nu);
    EXPECT_LE(std::abs(got - exact), std::max(1e-9 * exact, 1e-10)) << "nu=" << nu;
  }
}

TEST(QuadratureTest, HalvingTolerancesNeverIncreasesError) {
  struct Case {
    RealFunction f;
    double a;
    double exact;
  };
  const double sigma = std::sqrt(std::numbers::pi / 2);
  const std::vector<Case> cases = {
      {[](double x) { return x * std::exp(-x); }, 3.0, 4 * std::exp(-3.0)},
      {[](double x) { return x * x * std::exp(-x); }, 0.0, 2.0},
      {[sigma](double x) {
         return x * std::sqrt(2 / std::numbers::pi) / sigma * std::exp(-x * x / (2 * sigma * sigma));
       },
       1.0, std::exp(-1 / std::numbers::pi)},
      {[](double x) { return 1 / ((1 + x) * (1 + x)); }, 0.0, 1.0},
  };
  for (const auto& c : cases) {
    QuadratureConfig cfg{1e-3, 1e-3, 400};
    double previous = std::abs(integrate_semi_infinite(c.f, c.a, cfg) - c.exact);
    for (int step = 0; step < 8; ++step) {
      cfg.abs_tol /= 2;
      cfg.rel_tol /= 2;
      const double err = std::abs(integrate_semi_infinite(c.f, c.a, cfg) - c.exact);
      EXPECT_LE(err, previous + 4 * std::numeric_limits<double>::epsilon() * std::abs(c.exact))
          << "step " << step;
      previous = err;
    }
  }
}

TEST(QuadratureTest, ExhaustedBudgetThrows) {
  const QuadratureConfig cfg{1e-14, 0.0, 2};
  EXPECT_THROW(integrate_semi_infinite([](double x) { return std::exp(-x) * std::abs(std::sin(50 * x)); },
                                       0.0, cfg),
               NonConvergence);
}

TEST(QuadratureTest, NonFiniteIntegrandThrows) {
  EXPECT_THROW(integrate_semi_infinite([](double) { return std::nan(""); }, 0.0), InvalidInput);
  EXPECT_THROW(integrate_semi_infinite([](double x) { return std::exp(x); }, 0.0), InvalidInput);
}

TEST(QuadratureTest, ConfigValidation) {
  EXPECT_THROW((QuadratureConfig{0.0, 0.0, 10}.validate()), InvalidInput);
  EXPECT_THROW((QuadratureConfig{-1.0, 1e-9, 10}.validate()), InvalidInput);
  EXPECT_THROW((QuadratureConfig{1e-10, 1e-9, 0}.validate()), InvalidInput);
  EXPECT_NO_THROW((QuadratureConfig{0.0, 1e-9, 1}.validate()));
  EXPECT_THROW(integrate_semi_infinite([](double) { return 0.0; }, 0.0, {0.0, 0.0, 10}),
               InvalidInput);
}

TEST(RootTest, LinearRoot) {
  EXPECT_NEAR(find_root_monotone([](double x) { return x - 5; }, 0, 10, 1e-12), 5.0, 1e-12);
}

TEST(RootTest, ExponentialQuantile) {
  const auto g = [](double x) { return (1 - std::exp(-x)) - 0.999; };
  const double x = find_root_monotone(g, 0, 50, 1e-12);
  EXPECT_NEAR(x, 6.908, 5e-4);
  EXPECT_LE(std::abs(g(x)), 1e-8);
}

TEST(RootTest, HalfNormalQuantile) {
  const double sigma = std::sqrt(std::numbers::pi / 2);
  const auto g = [sigma](double x) { return std::erf(x / (sigma * std::numbers::sqrt2)) - 0.99; };
  const double x = find_root_monotone(g, 0, 50, 1e-12);
  EXPECT_NEAR(x, 3.228, 5e-4);
  EXPECT_LE(std::abs(g(x)), 1e-8);
}

TEST(RootTest, DecreasingFunctionAndExactEndpoints) {
  EXPECT_NEAR(find_root_monotone([](double x) { return 2 - x; }, 0, 10, 1e-12), 2.0, 1e-12);
  EXPECT_EQ(find_root_monotone([](double x) { return x; }, 0, 10, 1e-12), 0.0);
  EXPECT_EQ(find_root_monotone([](double x) { return x - 10; }, 0, 10, 1e-12), 10.0);
}

TEST(RootTest, SameSignBracketThrows) {
  EXPECT_THROW(find_root_monotone([](double x) { return x + 1; }, 0, 10, 1e-12), InvalidBracket);
}

TEST(MinimizeTest, Quadratic) {
  const auto m = minimize_unimodal([](double t) { return (t - 2) * (t - 2); }, 0, 5, 1e-8);
  EXPECT_NEAR(m.argmin, 2.0, 1e-8);
  EXPECT_NEAR(m.value, 0.0, 1e-15);
}

TEST(MinimizeTest, ClassicalChernoffObjectiveHasInteriorMinimum) {
  const double nu = 3;
  const auto m =
      minimize_unimodal([nu](double t) { return std::exp(-t * nu) / (1 - t); }, 0, 0.999, 1e-10);
  EXPECT_NEAR(m.argmin, 2.0 / 3.0, 1e-7);
  EXPECT_NEAR(m.value, 3 * std::exp(-2.0), 1e-12);
}

TEST(MinimizeTest, IncreasingObjectiveReturnsLowerEndpoint) {
  const double nu = 3;
  const auto objective = [nu](double t) { return std::exp(-nu) / (1 - t); };
  const auto m = minimize_unimodal(objective, 0, 0.999, 1e-10);
  EXPECT_EQ(m.argmin, 0.0);
  EXPECT_EQ(m.value, std::exp(-3.0));
  for (int i = 0; i <= 100; ++i) {
    EXPECT_GE(objective(0.999 * i / 100), m.value);
  }
}

TEST(MinimizeTest, DecreasingObjectiveReturnsUpperEndpoint) {
  const auto m = minimize_unimodal([](double t) { return -t; }, 0, 1, 1e-10);
  EXPECT_EQ(m.argmin, 1.0);
}

TEST(MinimizeTest, InfiniteValuesPushTowardsLowerEnd) {
  const auto m = minimize_unimodal(
      [](double t) { return t > 3 ? std::numeric_limits<double>::infinity() : (t - 1) * (t - 1); },
      0, 100, 1e-10);
  EXPECT_NEAR(m.argmin, 1.0, 1e-6);
}

TEST(MinimizeTest, EmptyBracketThrows) {
  EXPECT_THROW(minimize_unimodal([](double t) { return t; }, 1, 1, 1e-8), InvalidBracket);
  EXPECT_THROW(minimize_unimodal([](double t) { return t; }, 2, 1, 1e-8), InvalidBracket);
}

TEST(MinimizeTest, ConvexFunctionsFindStationaryPoint) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> centre(-5, 5);
  std::uniform_real_distribution<double> curvature(0.1, 10);
  for (int trial = 0; trial < 200; ++trial) {
    const double c = centre(rng);
    const double a = curvature(rng);
    // strictly convex, minimum at c
    const auto g = [a, c](double t) { return a * (t - c) * (t - c) + std::cosh(t - c); };
    const double tol = 1e-7;
    const auto m = minimize_unimodal(g, -10, 10, tol);
    EXPECT_NEAR(m.argmin, c, tol) << "trial " << trial;
  }
}

}  // namespace
}  // namespace tailbound
