#pragma once

#include <cstddef>
#include <vector>

#include "jrc/lp.hpp"
#include "jrc/matrix.hpp"
#include "jrc/uncertainty.hpp"

namespace jrc {

/// Allocation LP over x_ij >= 0 for the nodes flagged in `active`:
///   max sum (objective_ij) x_ij
///   s.t. sum_i x_ij <= capacity_j                      (one row per channel)
///        sum_j budget_coef_ij x_ij <= budget_rhs_i     (one row per active node)
/// Variables of inactive nodes are omitted. Nodes whose budget right-hand
/// side is negative get no variables either, since only y_i = 0 fits.
struct AllocationProblem {
  Matrix objective;
  Matrix budget_coef;
  std::vector<double> capacity;
  std::vector<double> budget_rhs;
  std::vector<bool> active;

  LinearProgram build() const;
  /// Scatters LP primal values back into an N x M matrix.
  Matrix unpack(const LpSolution& solution) const;
};

struct AllocationResult {
  Matrix allocation;
  double objective = 0.0;
  LpSolution lp;
};

AllocationResult solve_allocation(const AllocationProblem& problem);

/// max sum (v - c) x  s.t.  sum_i x_ij <= 1,  sum_j v_ij x_ij <= B_i,  x >= 0,
/// optionally with node `excluded` removed.
AllocationProblem welfare_problem(const Matrix& values, const std::vector<double>& costs,
                                  const std::vector<double>& budgets,
                                  std::size_t excluded = static_cast<std::size_t>(-1));

struct PricingDuals {
  std::vector<double> omega;  // per channel
  std::vector<double> phi;    // per node, budget rows
  std::vector<double> psi;    // per node, worst-case rows (empty when not used)
  double objective = 0.0;
};

/// Solves the dual of the welfare LP at valuations z explicitly:
///   min sum omega + sum_i (phi_i B_i + psi_i s_i)
///   s.t. omega_j + z_ij phi_i + z_ij psi_i >= z_ij - c_j,  all >= 0.
/// Pass an empty `worst_case_rhs` to drop psi entirely.
PricingDuals solve_pricing_dual(const Matrix& z, const std::vector<double>& costs,
                                const std::vector<double>& budgets,
                                const std::vector<double>& worst_case_rhs);

struct RobustNominalResult {
  Matrix worst_case_valuations;  // z
  Matrix nominal_allocation;     // x*
  std::vector<double> omega;
  std::vector<double> phi;
  std::vector<double> psi;
  std::vector<std::vector<double>> worst_profiles;  // u-bar^i
  double objective = 0.0;                           // worst-case welfare
  std::size_t cutting_plane_rounds = 0;
};

/// Interval sets reduce to the welfare LP at the lower endpoints; historical
/// sets run a cutting-plane loop with per-bidder worst-case profiles.
RobustNominalResult solve_robust_nominal(const UncertaintySet& set, const std::vector<double>& costs,
                                         const std::vector<double>& budgets);

/// r_ij = omega_j + z_ij (phi_i + psi_i) + c_j.
Matrix reservation_prices(const RobustNominalResult& result, const std::vector<double>& costs);

/// Vertex enumeration of the welfare LP; N * M must not exceed 9.
double brute_force_welfare(const Matrix& values, const std::vector<double>& costs,
                           const std::vector<double>& budgets);

/// Best integral assignment (each channel to at most one node) that respects budgets.
double best_integral_welfare(const Matrix& values, const std::vector<double>& costs,
                             const std::vector<double>& budgets);

}  // namespace jrc
