#include <gtest/gtest.h>

#include <cmath>

#include "jrc/lp.hpp"
#include "jrc/random.hpp"

using namespace jrc;

TEST(Lp, SingleBound) {
  LinearProgram lp;
  lp.add_variable(1.0);
  lp.add_constraint(std::vector<double>{1.0}, Sense::kLessEqual, 1.0);
  const auto s = solve_lp(lp);
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(s.x[0], 1.0, 1e-12);
  EXPECT_NEAR(s.duals[0], 1.0, 1e-12);
}

TEST(Lp, TextbookMaximisation) {
  // max 3x + 5y; x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36, duals (0, 1.5, 1).
  LinearProgram lp;
  lp.add_variable(3.0);
  lp.add_variable(5.0);
  lp.add_constraint(std::vector<double>{1.0, 0.0}, Sense::kLessEqual, 4.0);
  lp.add_constraint(std::vector<double>{0.0, 2.0}, Sense::kLessEqual, 12.0);
  lp.add_constraint(std::vector<double>{3.0, 2.0}, Sense::kLessEqual, 18.0);
  const auto s = solve_lp(lp);
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(s.objective, 36.0, 1e-9);
  EXPECT_NEAR(s.x[0], 2.0, 1e-9);
  EXPECT_NEAR(s.x[1], 6.0, 1e-9);
  EXPECT_NEAR(s.duals[0], 0.0, 1e-9);
  EXPECT_NEAR(s.duals[1], 1.5, 1e-9);
  EXPECT_NEAR(s.duals[2], 1.0, 1e-9);
  EXPECT_NEAR(s.dual_objective, 36.0, 1e-9);
}

TEST(Lp, MinimisationWithGreaterEqualAndEquality) {
  // min 2x + 3y; x + y >= 4, x - y = 1 -> x = 2.5, y = 1.5, 9.5
  LinearProgram lp;
  lp.direction = Direction::kMinimize;
  lp.add_variable(2.0);
  lp.add_variable(3.0);
  lp.add_constraint(std::vector<double>{1.0, 1.0}, Sense::kGreaterEqual, 4.0);
  lp.add_constraint(std::vector<double>{1.0, -1.0}, Sense::kEqual, 1.0);
  const auto s = solve_lp(lp);
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(s.objective, 9.5, 1e-9);
  EXPECT_NEAR(s.duals[0], 2.5, 1e-9);
  EXPECT_NEAR(s.duals[1], -0.5, 1e-9);
}

TEST(Lp, FreeAndBoundedVariables) {
  // max -|x| style: max -t, t >= x - 3, t >= 3 - x, x free, 1 <= t <= 10
  LinearProgram lp;
  const auto x = lp.add_variable(0.0, -kInfinity, kInfinity);
  const auto t = lp.add_variable(-1.0, 1.0, 10.0);
  lp.add_constraint(std::vector<std::pair<std::size_t, double>>{{t, 1.0}, {x, -1.0}}, Sense::kGreaterEqual, -3.0);
  lp.add_constraint(std::vector<std::pair<std::size_t, double>>{{t, 1.0}, {x, 1.0}}, Sense::kGreaterEqual, 3.0);
  const auto s = solve_lp(lp);
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(s.objective, -1.0, 1e-9);
  EXPECT_GE(s.x[x], 2.0 - 1e-9);
  EXPECT_LE(s.x[x], 4.0 + 1e-9);
}

TEST(Lp, DetectsInfeasible) {
  LinearProgram lp;
  lp.add_variable(1.0);
  lp.add_constraint(std::vector<double>{1.0}, Sense::kLessEqual, 1.0);
  lp.add_constraint(std::vector<double>{1.0}, Sense::kGreaterEqual, 2.0);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::kInfeasible);
}

TEST(Lp, DetectsUnbounded) {
  LinearProgram lp;
  lp.add_variable(1.0);
  lp.add_variable(1.0);
  lp.add_constraint(std::vector<double>{1.0, -1.0}, Sense::kLessEqual, 1.0);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::kUnbounded);
}

TEST(Lp, RejectsNonFiniteData) {
  LinearProgram lp;
  lp.add_variable(1.0);
  lp.add_constraint(std::vector<double>{std::nan("")}, Sense::kLessEqual, 1.0);
  EXPECT_THROW(lp.validate(), std::invalid_argument);
}

TEST(Lp, DegenerateVertexTerminates) {
  // Many constraints through the same vertex; Bland's rule must not cycle.
  LinearProgram lp;
  for (int j = 0; j < 4; ++j) lp.add_variable(1.0);
  for (int r = 0; r < 12; ++r) {
    std::vector<double> row(4);
    for (int j = 0; j < 4; ++j) row[j] = 1.0 + ((r + j) % 3);
    lp.add_constraint(row, Sense::kLessEqual, 0.0);
  }
  lp.add_constraint(std::vector<double>{1, 1, 1, 1}, Sense::kLessEqual, 1.0);
  const auto s = solve_lp(lp);
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(s.objective, 0.0, 1e-12);
}

TEST(Lp, RandomStrongDuality) {
  Rng rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    LinearProgram lp;
    const int n = 2 + t % 7, m = 1 + t % 5;
    for (int j = 0; j < n; ++j) lp.add_variable(u(rng) * 2 - 0.5);
    for (int r = 0; r < m; ++r) {
      std::vector<double> row(n);
      for (auto& a : row) a = u(rng);
      lp.add_constraint(row, Sense::kLessEqual, 0.5 + u(rng));
    }
    const auto s = solve_lp(lp);
    ASSERT_TRUE(s.optimal());
    EXPECT_NEAR(s.objective, s.dual_objective, 1e-8);
    for (double y : s.duals) EXPECT_GE(y, -1e-9);
  }
}
