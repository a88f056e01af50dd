#include <gtest/gtest.h>

#include <cmath>

#include "jrc/experiments.hpp"
#include "jrc/robust.hpp"

using namespace jrc;

namespace {

IntervalUncertainty single(double lo, double hi) {
  return IntervalUncertainty::from_bounds(Matrix::from_rows({{lo}}), Matrix::from_rows({{hi}}));
}

}  // namespace

TEST(Welfare, SingleBidderSingleChannel) {
  const auto r = solve_allocation(welfare_problem(Matrix::from_rows({{4.0}}), {1.0}, {10.0}));
  EXPECT_NEAR(r.allocation(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(r.objective, 3.0, 1e-12);
}

TEST(Welfare, MatchesVertexEnumeration) {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    RandomMarketConfig cfg;
    cfg.value_min = 0.0;
    const RandomMarket mk = random_market(2, 2, rng, cfg);
    const auto r = solve_allocation(welfare_problem(mk.set.center, mk.costs, mk.budgets));
    EXPECT_NEAR(r.objective, brute_force_welfare(mk.set.center, mk.costs, mk.budgets), 1e-6);
  }
}

TEST(Welfare, BindingBudgetMakesFractionalBeatIntegral) {
  const Matrix v = Matrix::from_rows({{5.0, 4.0}, {3.0, 1.5}});
  const std::vector<double> c{1.0, 1.0}, b{5.0, 1.0};
  const double frac = solve_allocation(welfare_problem(v, c, b)).objective;
  EXPECT_GT(frac, best_integral_welfare(v, c, b) + 1e-6);
  EXPECT_NEAR(frac, brute_force_welfare(v, c, b), 1e-9);
}

TEST(Welfare, ExcludedNodeGetsNothing) {
  const Matrix v = Matrix::from_rows({{5.0}, {4.0}});
  const auto r = solve_allocation(welfare_problem(v, {1.0}, {10.0, 10.0}, 0));
  EXPECT_EQ(r.allocation(0, 0), 0.0);
  EXPECT_NEAR(r.allocation(1, 0), 1.0, 1e-12);
}

TEST(PricingDual, StrongDualityWithWelfareLp) {
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    const RandomMarket mk = random_market(3, 4, rng);
    const double primal = solve_allocation(welfare_problem(mk.set.center, mk.costs, mk.budgets)).objective;
    EXPECT_NEAR(solve_pricing_dual(mk.set.center, mk.costs, mk.budgets, {}).objective, primal, 1e-7);
  }
}

TEST(RobustNominal, SingleBidderInterval) {
  const UncertaintySet s = single(3.0, 5.0);
  const auto r = solve_robust_nominal(s, {1.0}, {10.0});
  EXPECT_DOUBLE_EQ(r.worst_case_valuations(0, 0), 3.0);
  EXPECT_NEAR(r.nominal_allocation(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(r.objective, 2.0, 1e-12);
  const Matrix price = reservation_prices(r, {1.0});
  EXPECT_GE(price(0, 0), 3.0 - 1e-9);
}

TEST(RobustNominal, NoProfitableTrade) {
  const UncertaintySet s = IntervalUncertainty::from_bounds(Matrix::from_rows({{0.5, 0.2}, {0.9, 0.1}}),
                                                            Matrix::from_rows({{0.8, 0.4}, {0.95, 0.3}}));
  const std::vector<double> c{1.0, 1.0};
  const auto r = solve_robust_nominal(s, c, {5.0, 5.0});
  EXPECT_EQ(r.objective, 0.0);
  const Matrix price = reservation_prices(r, c);
  for (double p : price.data()) EXPECT_NEAR(p, 1.0, 1e-12);
}

TEST(RobustNominal, RadiusZeroIsWelfareLp) {
  Rng rng(5);
  RandomMarketConfig cfg;
  cfg.radius_fraction_max = 0.0;
  const RandomMarket mk = random_market(4, 3, rng, cfg);
  const auto r = solve_robust_nominal(UncertaintySet{mk.set}, mk.costs, mk.budgets);
  const auto w = solve_allocation(welfare_problem(mk.set.center, mk.costs, mk.budgets));
  EXPECT_EQ(r.worst_case_valuations.max_abs_diff(mk.set.center), 0.0);
  EXPECT_LT(r.nominal_allocation.max_abs_diff(w.allocation), 1e-12);
}

TEST(RobustNominal, PricesEqualWorstCaseWhereAllocated) {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    const RandomMarket mk = random_market(4, 3, rng);
    const auto r = solve_robust_nominal(UncertaintySet{mk.set}, mk.costs, mk.budgets);
    const Matrix price = reservation_prices(r, mk.costs);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_GE(price(i, j), r.worst_case_valuations(i, j) - 1e-7);
        if (r.nominal_allocation(i, j) > 1e-7) EXPECT_NEAR(price(i, j), r.worst_case_valuations(i, j), 1e-7);
      }
  }
}

TEST(RobustNominal, HistoricalCuttingPlaneIsConservative) {
  HistoricalUncertainty h;
  h.nodes = 3;
  h.factor_min = {2.0, 2.5};
  h.factor_max = {3.0, 3.0};
  h.component_mean = {0.2, 0.0};
  h.component_std = {0.3, 0.2};
  h.theta = 1.0;
  const std::vector<double> c{1.0, 1.5}, b{4.0, 4.0, 4.0};
  const UncertaintySet s = h;
  const auto r = solve_robust_nominal(s, c, b);
  EXPECT_GE(r.cutting_plane_rounds, 1u);
  EXPECT_LE(r.objective, solve_allocation(welfare_problem(h.center(), c, b)).objective + 1e-9);
  EXPECT_GT(r.objective, 0.0);
  for (std::size_t j = 0; j < 2; ++j) EXPECT_LE(r.nominal_allocation.col_sum(j), 1.0 + 1e-9);
}
