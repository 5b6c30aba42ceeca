#include <gtest/gtest.h>

#include "ctxrt/error.hpp"
#include "ctxrt/lp.hpp"
#include "ctxrt/rational.hpp"
#include "support/generators.hpp"

using namespace ctxrt;
using ctxrt::testing::ratio;

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("3/4"), ratio(3, 4));
  EXPECT_EQ(format_rational(parse_rational("-6/8")), "-3/4");
  EXPECT_EQ(parse_rational("0.125"), ratio(1, 8));
  EXPECT_EQ(parse_rational("-.5"), ratio(-1, 2));
  EXPECT_EQ(parse_rational("1e-3"), ratio(1, 1000));
  EXPECT_EQ(parse_rational("2.5E2"), Rational(250));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational(" 1/2 "), ratio(1, 2));
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "abc", "1/2/3", "0.1.2", "1e", "--1", "6/-8"}) {
    EXPECT_THROW(parse_rational(bad), InputError) << bad;
  }
}

TEST(Rational, FormatsCanonically) {
  EXPECT_EQ(format_rational(ratio(4, 8)), "1/2");
  EXPECT_EQ(format_rational(Rational(-3)), "-3");
  EXPECT_EQ(format_rational(Rational(0)), "0");
  EXPECT_EQ(format_decimal(ratio(1, 3), 7), "0.3333333");
}

namespace {

RationalVector row(std::initializer_list<long> xs) {
  RationalVector r;
  for (long x : xs) r.emplace_back(x);
  return r;
}

}  // namespace

TEST(Lp, SingleVariableBound) {
  lp::LinearProgram p(1);
  p.objective = row({1});
  p.add_le(row({1}), 1);
  auto out = lp::solve(p);
  ASSERT_EQ(out.status, lp::Status::optimal);
  EXPECT_EQ(out.solution[0], 1);
  EXPECT_EQ(*out.objective_value, 1);
}

TEST(Lp, FeasibilityOfSimplex) {
  lp::LinearProgram p(2);
  p.add_eq(row({1, 1}), 1);
  auto out = lp::solve(p);
  ASSERT_EQ(out.status, lp::Status::feasible);
  EXPECT_EQ(out.solution[0] + out.solution[1], 1);
  EXPECT_GE(out.solution[0], 0);
  EXPECT_GE(out.solution[1], 0);
}

TEST(Lp, ContradictoryEqualities) {
  lp::LinearProgram p(1);
  p.add_eq(row({1}), 1);
  p.add_eq(row({1}), 2);
  EXPECT_EQ(lp::solve(p).status, lp::Status::infeasible);
}

TEST(Lp, TwoDimensionalOptimum) {
  lp::LinearProgram p(2);
  p.objective = row({1, 1});
  p.add_le(row({1, 2}), 4);
  p.add_le(row({3, 1}), 6);
  auto out = lp::solve(p);
  ASSERT_EQ(out.status, lp::Status::optimal);
  EXPECT_EQ(out.solution[0], ratio(8, 5));
  EXPECT_EQ(out.solution[1], ratio(6, 5));
  EXPECT_EQ(*out.objective_value, ratio(14, 5));
}

TEST(Lp, Unbounded) {
  lp::LinearProgram p(2);
  p.objective = row({1, 0});
  p.add_ge(row({1, -1}), 0);
  EXPECT_EQ(lp::solve(p).status, lp::Status::unbounded);
}

TEST(Lp, RedundantRowsAreTolerated) {
  lp::LinearProgram p(3);
  p.add_eq(row({1, 1, 0}), 1);
  p.add_eq(row({2, 2, 0}), 2);
  p.add_eq(row({0, 0, 1}), 0);
  p.add_eq(row({1, 1, 1}), 1);
  auto out = lp::solve(p);
  ASSERT_TRUE(out.has_solution());
  EXPECT_TRUE(lp::satisfies(p, out.solution));
}

TEST(Lp, ShiftedAndFreeVariables) {
  // minimize x + y with x >= 2, y free, y >= x - 5
  lp::LinearProgram p(2);
  p.objective = row({-1, -1});
  p.set_lower_bound(0, Rational(2));
  p.set_lower_bound(1, std::nullopt);
  p.add_ge(row({-1, 1}), -5);
  auto out = lp::solve(p);
  ASSERT_EQ(out.status, lp::Status::optimal);
  EXPECT_EQ(out.solution[0], 2);
  EXPECT_EQ(out.solution[1], -3);
  EXPECT_EQ(*out.objective_value, 1);
}

TEST(Lp, NegativeRightHandSides) {
  lp::LinearProgram p(2);
  p.add_eq(row({-1, -1}), -3);
  p.add_le(row({1, 0}), 1);
  auto out = lp::solve(p);
  ASSERT_TRUE(out.has_solution());
  EXPECT_TRUE(lp::satisfies(p, out.solution));
}

TEST(Lp, BealeCyclingExampleTerminates) {
  lp::LinearProgram p(4);
  p.objective = RationalVector{ratio(3, 4), Rational(-20), ratio(1, 2), Rational(-6)};
  p.add_le(RationalVector{ratio(1, 4), Rational(-8), Rational(-1), Rational(9)}, 0);
  p.add_le(RationalVector{ratio(1, 2), Rational(-12), ratio(-1, 2), Rational(3)}, 0);
  p.add_le(row({0, 0, 1, 0}), 1);
  auto out = lp::solve(p);
  ASSERT_EQ(out.status, lp::Status::optimal);
  EXPECT_EQ(*out.objective_value, ratio(5, 4));
}

TEST(Lp, DifferencesBelowDoublePrecisionAreResolvedExactly) {
  const Rational tiny = parse_rational("1/100000000000000000000");
  lp::LinearProgram infeasible(2);
  infeasible.add_eq(row({1, -1}), tiny);
  infeasible.add_eq(row({1, -1}), 0);
  EXPECT_EQ(lp::solve(infeasible).status, lp::Status::infeasible);

  lp::LinearProgram feasible(2);
  feasible.add_eq(row({1, 1}), 1);
  feasible.add_eq(RationalVector{Rational(1), Rational(-1 - tiny)}, 0);
  auto out = lp::solve(feasible);
  ASSERT_EQ(out.status, lp::Status::feasible);
  EXPECT_EQ(out.solution[0], (1 + tiny) / (2 + tiny));

  lp::LinearProgram optimum(2);
  optimum.objective = RationalVector{Rational(1), Rational(1) + tiny};
  optimum.add_le(row({1, 1}), 1);
  auto best = lp::solve(optimum);
  ASSERT_EQ(best.status, lp::Status::optimal);
  EXPECT_EQ(*best.objective_value, 1 + tiny);
}

TEST(Lp, DimensionMismatchIsInputError) {
  lp::LinearProgram p(2);
  p.add_eq(row({1}), 1);
  EXPECT_THROW(lp::solve(p), InputError);
}

TEST(LpProperty, PlantedFeasiblePointsAreFound) {
  ctxrt::testing::Rng rng(11);
  std::uniform_int_distribution<long> coef(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t vars = 2 + trial % 5;
    const std::size_t rows = 1 + trial % 4;
    RationalVector x0(vars);
    for (auto& v : x0) v = ctxrt::testing::random_unit(rng, 6);
    lp::LinearProgram p(vars);
    for (std::size_t r = 0; r < rows; ++r) {
      RationalVector a(vars);
      Rational b(0);
      for (std::size_t j = 0; j < vars; ++j) {
        a[j] = coef(rng);
        b += a[j] * x0[j];
      }
      if (r % 2 == 0) {
        p.add_eq(a, b);
      } else {
        p.add_ge(a, b - 1);
      }
    }
    auto out = lp::solve(p);
    ASSERT_TRUE(out.has_solution()) << "trial " << trial;
    EXPECT_TRUE(lp::satisfies(p, out.solution));
  }
}

TEST(LpProperty, OptimumDominatesPlantedPoint) {
  ctxrt::testing::Rng rng(12);
  std::uniform_int_distribution<long> coef(0, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t vars = 3;
    RationalVector x0(vars);
    for (auto& v : x0) v = ctxrt::testing::random_unit(rng, 4);
    lp::LinearProgram p(vars);
    p.objective = RationalVector{Rational(coef(rng)), Rational(coef(rng)), Rational(coef(rng))};
    for (int r = 0; r < 3; ++r) {
      RationalVector a{Rational(coef(rng) + 1), Rational(coef(rng) + 1), Rational(coef(rng) + 1)};
      Rational b = a[0] * x0[0] + a[1] * x0[1] + a[2] * x0[2];
      p.add_le(a, b + 1);
    }
    auto out = lp::solve(p);
    ASSERT_EQ(out.status, lp::Status::optimal);
    Rational planted = (*p.objective)[0] * x0[0] + (*p.objective)[1] * x0[1] + (*p.objective)[2] * x0[2];
    EXPECT_GE(*out.objective_value, planted);
  }
}
