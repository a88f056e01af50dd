#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace jrc {

enum class Sense { kLessEqual, kGreaterEqual, kEqual };
enum class Direction { kMaximize, kMinimize };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* to_string(LpStatus status);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Dense linear program. Declare variables first, then constraints; rows
/// shorter than the variable count are zero-padded.
struct LinearProgram {
  Direction direction = Direction::kMaximize;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::vector<double>> rows;
  std::vector<Sense> senses;
  std::vector<double> rhs;

  std::size_t add_variable(double cost, double lo = 0.0, double hi = kInfinity);
  std::size_t add_constraint(std::vector<double> coefficients, Sense sense, double rhs_value);
  std::size_t add_constraint(const std::vector<std::pair<std::size_t, double>>& terms, Sense sense,
                             double rhs_value);

  std::size_t num_variables() const { return objective.size(); }
  std::size_t num_constraints() const { return rows.size(); }

  /// Throws std::invalid_argument on inconsistent dimensions or non-finite data.
  void validate() const;
};

struct LpOptions {
  double feasibility_tolerance = 1e-8;
  double optimality_tolerance = 1e-9;
  double pivot_tolerance = 1e-11;
  std::size_t max_iterations = 200000;
};

/// Duals are the sensitivities d(objective)/d(rhs): for a maximisation a
/// binding <= row has a non-negative dual. Reduced costs are c - A^T y and
/// are non-zero only for variables sitting at one of their bounds.
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  double objective = 0.0;
  double dual_objective = 0.0;
  std::size_t iterations = 0;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

/// Two-phase dense tableau simplex with Bland's rule.
LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options = {});

}  // namespace jrc
