#include "jrc/robust.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace jrc {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);
constexpr std::size_t kMaxCuttingPlaneRounds = 200;
constexpr double kCutTolerance = 1e-6;

void check_market(std::size_t n, std::size_t m, const std::vector<double>& costs,
                  const std::vector<double>& budgets) {
  if (costs.size() != m)
    throw std::invalid_argument("expected " + std::to_string(m) + " channel costs, got " +
                                std::to_string(costs.size()));
  if (budgets.size() != n)
    throw std::invalid_argument("expected " + std::to_string(n) + " budgets, got " +
                                std::to_string(budgets.size()));
  for (double c : costs)
    if (!(c >= 0.0)) throw std::invalid_argument("channel costs must be >= 0");
  for (double b : budgets)
    if (!(b >= 0.0)) throw std::invalid_argument("budgets must be >= 0");
}

}  // namespace

// ---------------------------------------------------------------------------
// Allocation LPs

LinearProgram AllocationProblem::build() const {
  const std::size_t n = objective.rows();
  const std::size_t m = objective.cols();
  if (!budget_coef.same_shape(objective) || capacity.size() != m || budget_rhs.size() != n ||
      active.size() != n)
    throw std::invalid_argument("allocation problem has inconsistent dimensions");

  LinearProgram lp;
  lp.direction = Direction::kMaximize;
  std::vector<std::size_t> first(n, kNone);
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i] || budget_rhs[i] < 0.0) continue;
    first[i] = lp.num_variables();
    for (std::size_t j = 0; j < m; ++j) lp.add_variable(objective(i, j));
  }
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t i = 0; i < n; ++i)
      if (first[i] != kNone) terms.emplace_back(first[i] + j, 1.0);
    lp.add_constraint(terms, Sense::kLessEqual, capacity[j]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (first[i] == kNone) continue;
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t j = 0; j < m; ++j) terms.emplace_back(first[i] + j, budget_coef(i, j));
    lp.add_constraint(terms, Sense::kLessEqual, budget_rhs[i]);
  }
  return lp;
}

Matrix AllocationProblem::unpack(const LpSolution& solution) const {
  const std::size_t n = objective.rows();
  const std::size_t m = objective.cols();
  Matrix x(n, m);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i] || budget_rhs[i] < 0.0) continue;
    for (std::size_t j = 0; j < m; ++j) x(i, j) = solution.x.at(k++);
  }
  return x;
}

AllocationResult solve_allocation(const AllocationProblem& problem) {
  AllocationResult r;
  r.lp = solve_lp(problem.build());
  if (!r.lp.optimal())
    throw std::runtime_error(std::string("allocation LP ended ") + to_string(r.lp.status));
  r.allocation = problem.unpack(r.lp);
  r.objective = r.lp.objective;
  return r;
}

AllocationProblem welfare_problem(const Matrix& values, const std::vector<double>& costs,
                                  const std::vector<double>& budgets, std::size_t excluded) {
  const std::size_t n = values.rows();
  const std::size_t m = values.cols();
  check_market(n, m, costs, budgets);
  AllocationProblem p;
  p.objective = Matrix(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) p.objective(i, j) = values(i, j) - costs[j];
  p.budget_coef = values;
  p.capacity.assign(m, 1.0);
  p.budget_rhs = budgets;
  p.active.assign(n, true);
  if (excluded != kNone) p.active.at(excluded) = false;
  return p;
}

// ---------------------------------------------------------------------------
// Pricing dual

PricingDuals solve_pricing_dual(const Matrix& z, const std::vector<double>& costs,
                                const std::vector<double>& budgets,
                                const std::vector<double>& worst_case_rhs) {
  const std::size_t n = z.rows();
  const std::size_t m = z.cols();
  check_market(n, m, costs, budgets);
  const bool with_psi = !worst_case_rhs.empty();
  if (with_psi && worst_case_rhs.size() != n)
    throw std::invalid_argument("worst-case right-hand side must have one entry per node");

  LinearProgram lp;
  lp.direction = Direction::kMinimize;
  for (std::size_t j = 0; j < m; ++j) lp.add_variable(1.0);
  for (std::size_t i = 0; i < n; ++i) lp.add_variable(budgets[i]);
  if (with_psi)
    for (std::size_t i = 0; i < n; ++i) lp.add_variable(worst_case_rhs[i]);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<std::pair<std::size_t, double>> terms{{j, 1.0}, {m + i, z(i, j)}};
      if (with_psi) terms.emplace_back(m + n + i, z(i, j));
      lp.add_constraint(terms, Sense::kGreaterEqual, z(i, j) - costs[j]);
    }
  }
  const LpSolution sol = solve_lp(lp);
  if (!sol.optimal())
    throw std::runtime_error(std::string("pricing dual ended ") + to_string(sol.status));

  PricingDuals d;
  d.omega.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(m));
  d.phi.assign(sol.x.begin() + static_cast<std::ptrdiff_t>(m),
               sol.x.begin() + static_cast<std::ptrdiff_t>(m + n));
  if (with_psi) d.psi.assign(sol.x.begin() + static_cast<std::ptrdiff_t>(m + n), sol.x.end());
  d.objective = sol.objective;
  return d;
}

// ---------------------------------------------------------------------------
// Robust nominal problem

namespace {

void attach_duals(RobustNominalResult& r, const std::vector<double>& costs,
                  const std::vector<double>& budgets) {
  const std::size_t n = r.nominal_allocation.rows();
  const std::size_t m = r.nominal_allocation.cols();
  std::vector<double> rhs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      rhs[i] += r.nominal_allocation(i, j) * r.worst_profiles[i][j];
  PricingDuals d = solve_pricing_dual(r.worst_case_valuations, costs, budgets, rhs);
  r.omega = std::move(d.omega);
  r.phi = std::move(d.phi);
  r.psi = std::move(d.psi);
}

RobustNominalResult solve_interval(const IntervalUncertainty& set, const std::vector<double>& costs,
                                   const std::vector<double>& budgets) {
  set.validate();
  RobustNominalResult r;
  r.worst_case_valuations = set.lower();
  const AllocationResult alloc =
      solve_allocation(welfare_problem(r.worst_case_valuations, costs, budgets));
  r.nominal_allocation = alloc.allocation;
  r.objective = alloc.objective;
  const UncertaintySet view = set;
  for (std::size_t i = 0; i < set.nodes(); ++i)
    r.worst_profiles.push_back(worst_case_profile(view, r.nominal_allocation, i));
  return r;
}

RobustNominalResult solve_historical(const HistoricalUncertainty& set,
                                     const std::vector<double>& costs,
                                     const std::vector<double>& budgets) {
  set.validate();
  const std::size_t n = set.nodes;
  const std::size_t m = set.channels();
  check_market(n, m, costs, budgets);
  const UncertaintySet view = set;

  // Variables: x_ij (row-major), then t_i = worst-case value of bidder i.
  std::vector<std::vector<std::vector<double>>> cuts(n);
  const Matrix start = set.center();
  for (std::size_t i = 0; i < n; ++i)
    cuts[i].push_back(std::vector<double>(start.row(i).begin(), start.row(i).end()));

  RobustNominalResult r;
  Matrix x(n, m);
  std::vector<double> t(n, 0.0);
  for (std::size_t round = 0;; ++round) {
    if (round == kMaxCuttingPlaneRounds)
      throw std::runtime_error("cutting-plane loop did not converge");
    LinearProgram lp;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) lp.add_variable(-costs[j]);
    for (std::size_t i = 0; i < n; ++i) lp.add_variable(1.0, -kInfinity, budgets[i]);
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<std::pair<std::size_t, double>> terms;
      for (std::size_t i = 0; i < n; ++i) terms.emplace_back(i * m + j, 1.0);
      lp.add_constraint(terms, Sense::kLessEqual, 1.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& u : cuts[i]) {
        std::vector<std::pair<std::size_t, double>> terms{{n * m + i, 1.0}};
        for (std::size_t j = 0; j < m; ++j) terms.emplace_back(i * m + j, -u[j]);
        lp.add_constraint(terms, Sense::kLessEqual, 0.0);
      }
    }
    const LpSolution sol = solve_lp(lp);
    if (!sol.optimal())
      throw std::runtime_error(std::string("cutting-plane master ended ") + to_string(sol.status));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) x(i, j) = sol.x[i * m + j];
      t[i] = sol.x[n * m + i];
    }
    bool violated = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> u = worst_case_profile(view, x, i);
      double value = 0.0;
      for (std::size_t j = 0; j < m; ++j) value += u[j] * x(i, j);
      if (value < t[i] - kCutTolerance) {
        cuts[i].push_back(std::move(u));
        violated = true;
      }
    }
    r.cutting_plane_rounds = round + 1;
    if (!violated) break;
  }

  r.nominal_allocation = x;
  r.worst_case_valuations = Matrix(n, m);
  r.objective = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    r.worst_profiles.push_back(worst_case_profile(view, x, i));
    for (std::size_t j = 0; j < m; ++j) {
      r.worst_case_valuations(i, j) = r.worst_profiles[i][j];
      r.objective += (r.worst_profiles[i][j] - costs[j]) * x(i, j);
    }
  }
  return r;
}

}  // namespace

RobustNominalResult solve_robust_nominal(const UncertaintySet& set, const std::vector<double>& costs,
                                         const std::vector<double>& budgets) {
  RobustNominalResult r = std::holds_alternative<IntervalUncertainty>(set)
                              ? solve_interval(std::get<IntervalUncertainty>(set), costs, budgets)
                              : solve_historical(std::get<HistoricalUncertainty>(set), costs, budgets);
  attach_duals(r, costs, budgets);
  return r;
}

Matrix reservation_prices(const RobustNominalResult& result, const std::vector<double>& costs) {
  const Matrix& z = result.worst_case_valuations;
  Matrix r(z.rows(), z.cols());
  for (std::size_t i = 0; i < z.rows(); ++i) {
    const double scale = result.phi.at(i) + (result.psi.empty() ? 0.0 : result.psi.at(i));
    for (std::size_t j = 0; j < z.cols(); ++j)
      r(i, j) = result.omega.at(j) + z(i, j) * scale + costs.at(j);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Oracles

namespace {

// Solves the square system a x = b in place; false when singular.
bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-12) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return true;
}

}  // namespace

double brute_force_welfare(const Matrix& values, const std::vector<double>& costs,
                           const std::vector<double>& budgets) {
  const std::size_t n = values.rows();
  const std::size_t m = values.cols();
  check_market(n, m, costs, budgets);
  const std::size_t vars = n * m;
  if (vars == 0 || vars > 9) throw std::invalid_argument("brute_force_welfare needs 1 <= N*M <= 9");

  // All constraints in the form a x <= b: channel rows, budget rows, -x <= 0.
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> row(vars, 0.0);
    for (std::size_t i = 0; i < n; ++i) row[i * m + j] = 1.0;
    a.push_back(row);
    b.push_back(1.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(vars, 0.0);
    for (std::size_t j = 0; j < m; ++j) row[i * m + j] = values(i, j);
    a.push_back(row);
    b.push_back(budgets[i]);
  }
  for (std::size_t k = 0; k < vars; ++k) {
    std::vector<double> row(vars, 0.0);
    row[k] = -1.0;
    a.push_back(row);
    b.push_back(0.0);
  }

  const std::size_t total = a.size();
  double best = 0.0;  // x = 0 is always feasible
  std::vector<std::size_t> pick(vars);
  for (std::size_t k = 0; k < vars; ++k) pick[k] = k;
  std::vector<double> x;
  while (true) {
    std::vector<std::vector<double>> sub;
    std::vector<double> rhs;
    for (std::size_t k : pick) {
      sub.push_back(a[k]);
      rhs.push_back(b[k]);
    }
    if (solve_square(sub, rhs, x)) {
      bool feasible = true;
      for (std::size_t r = 0; r < total && feasible; ++r) {
        double lhs = 0.0;
        for (std::size_t c = 0; c < vars; ++c) lhs += a[r][c] * x[c];
        feasible = lhs <= b[r] + 1e-9 * std::max(1.0, std::abs(b[r]));
      }
      if (feasible) {
        double obj = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < m; ++j) obj += (values(i, j) - costs[j]) * x[i * m + j];
        best = std::max(best, obj);
      }
    }
    // Next combination in lexicographic order.
    std::size_t k = vars;
    while (k > 0 && pick[k - 1] == total - vars + k - 1) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t q = k; q < vars; ++q) pick[q] = pick[q - 1] + 1;
  }
  return best;
}

double best_integral_welfare(const Matrix& values, const std::vector<double>& costs,
                             const std::vector<double>& budgets) {
  const std::size_t n = values.rows();
  const std::size_t m = values.cols();
  check_market(n, m, costs, budgets);
  std::vector<std::size_t> owner(m, 0);  // 0 = unallocated, k = node k-1
  double best = 0.0;
  while (true) {
    std::vector<double> spend(n, 0.0);
    double welfare = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (owner[j] == 0) continue;
      spend[owner[j] - 1] += values(owner[j] - 1, j);
      welfare += values(owner[j] - 1, j) - costs[j];
    }
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) ok = ok && spend[i] <= budgets[i] + 1e-12;
    if (ok) best = std::max(best, welfare);
    std::size_t j = 0;
    while (j < m && owner[j] == n) owner[j++] = 0;
    if (j == m) break;
    ++owner[j];
  }
  return best;
}

}  // namespace jrc
