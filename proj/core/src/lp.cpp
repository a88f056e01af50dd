#include "jrc/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace jrc {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

std::size_t LinearProgram::add_variable(double cost, double lo, double hi) {
  if (!rows.empty()) throw std::logic_error("add_variable after constraints");
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  return objective.size() - 1;
}

std::size_t LinearProgram::add_constraint(std::vector<double> coefficients, Sense sense,
                                          double rhs_value) {
  if (coefficients.size() > num_variables())
    throw std::invalid_argument("constraint has more coefficients than variables");
  coefficients.resize(num_variables(), 0.0);
  rows.push_back(std::move(coefficients));
  senses.push_back(sense);
  rhs.push_back(rhs_value);
  return rows.size() - 1;
}

std::size_t LinearProgram::add_constraint(const std::vector<std::pair<std::size_t, double>>& terms,
                                          Sense sense, double rhs_value) {
  std::vector<double> row(num_variables(), 0.0);
  for (const auto& [j, a] : terms) {
    if (j >= num_variables()) throw std::out_of_range("constraint term index");
    row[j] += a;
  }
  return add_constraint(std::move(row), sense, rhs_value);
}

void LinearProgram::validate() const {
  const std::size_t n = num_variables();
  if (lower.size() != n || upper.size() != n)
    throw std::invalid_argument("bound vectors do not match variable count");
  if (senses.size() != rows.size() || rhs.size() != rows.size())
    throw std::invalid_argument("constraint vectors have inconsistent lengths");
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(objective[j])) throw std::invalid_argument("non-finite objective coefficient");
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j] ||
        lower[j] == kInfinity || upper[j] == -kInfinity)
      throw std::invalid_argument("invalid bounds on variable " + std::to_string(j));
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != n) throw std::invalid_argument("row " + std::to_string(r) + " has wrong length");
    if (!std::isfinite(rhs[r])) throw std::invalid_argument("non-finite right-hand side");
    for (double a : rows[r])
      if (!std::isfinite(a)) throw std::invalid_argument("non-finite constraint coefficient");
  }
}

namespace {

enum class Transform { kShift, kMirror, kFree };

struct VariableMap {
  Transform kind;
  std::size_t column;  // first internal column
  double offset;       // l for shift, u for mirror
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), t_(rows * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return t_[r * (n_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return t_[r * (n_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, n_); }
  double rhs(std::size_t r) const { return at(r, n_); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  void pivot(std::size_t r, std::size_t e, std::vector<double>& d) {
    const double p = at(r, e);
    for (std::size_t c = 0; c <= n_; ++c) at(r, c) /= p;
    at(r, e) = 1.0;
    for (std::size_t k = 0; k < m_; ++k) {
      if (k == r) continue;
      const double f = at(k, e);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= n_; ++c) {
        double v = at(k, c) - f * at(r, c);
        if (std::abs(v) < 1e-14) v = 0.0;
        at(k, c) = v;
      }
      at(k, e) = 0.0;
    }
    const double f = d[e];
    if (f != 0.0) {
      for (std::size_t c = 0; c <= n_; ++c) d[c] -= f * at(r, c);
      d[e] = 0.0;
    }
    basis_[r] = e;
  }

  /// d_j = c_j - c_B B^-1 A_j; the last entry holds -c_B B^-1 b.
  std::vector<double> reduced_costs(const std::vector<double>& cost) const {
    std::vector<double> d(n_ + 1, 0.0);
    for (std::size_t c = 0; c < n_; ++c) d[c] = cost[c];
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t c = 0; c <= n_; ++c) d[c] -= cb * at(r, c);
    }
    return d;
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

enum class PhaseResult { kOptimal, kUnbounded, kIterationLimit };

PhaseResult run_simplex(Tableau& t, std::vector<double>& d, const std::vector<bool>& may_enter,
                        const LpOptions& opt, std::size_t& iterations) {
  while (true) {
    if (iterations >= opt.max_iterations) return PhaseResult::kIterationLimit;
    std::size_t entering = t.cols();
    for (std::size_t c = 0; c < t.cols(); ++c) {
      if (may_enter[c] && d[c] > opt.optimality_tolerance) {
        entering = c;
        break;
      }
    }
    if (entering == t.cols()) return PhaseResult::kOptimal;

    std::size_t leaving = t.rows();
    double best_ratio = kInfinity;
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, entering);
      if (a <= opt.pivot_tolerance) continue;
      const double ratio = std::max(t.rhs(r), 0.0) / a;
      if (leaving == t.rows()) {
        best_ratio = ratio;
        leaving = r;
        continue;
      }
      const double tie = 1e-12 * std::max(1.0, best_ratio);
      if (ratio < best_ratio - tie) {
        best_ratio = ratio;
        leaving = r;
      } else if (ratio <= best_ratio + tie && t.basis()[r] < t.basis()[leaving]) {
        leaving = r;
      }
    }
    if (leaving == t.rows()) return PhaseResult::kUnbounded;
    t.pivot(leaving, entering, d);
    ++iterations;
  }
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& opt) {
  lp.validate();
  const std::size_t n = lp.num_variables();
  const double dir = lp.direction == Direction::kMaximize ? 1.0 : -1.0;

  // Map original variables onto non-negative internal columns.
  std::vector<VariableMap> vars(n);
  std::size_t structural = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = lp.lower[j];
    const double hi = lp.upper[j];
    if (std::isfinite(lo)) {
      vars[j] = {Transform::kShift, structural++, lo};
    } else if (std::isfinite(hi)) {
      vars[j] = {Transform::kMirror, structural++, hi};
    } else {
      vars[j] = {Transform::kFree, structural, 0.0};
      structural += 2;
    }
  }

  struct InternalRow {
    std::vector<double> a;
    Sense sense;
    double b;
    bool negated = false;
  };
  std::vector<InternalRow> rows;
  rows.reserve(lp.num_constraints() + n);
  for (std::size_t r = 0; r < lp.num_constraints(); ++r) {
    InternalRow row{std::vector<double>(structural, 0.0), lp.senses[r], lp.rhs[r]};
    for (std::size_t j = 0; j < n; ++j) {
      const double a = lp.rows[r][j];
      if (a == 0.0) continue;
      const VariableMap& v = vars[j];
      switch (v.kind) {
        case Transform::kShift:
          row.a[v.column] += a;
          row.b -= a * v.offset;
          break;
        case Transform::kMirror:
          row.a[v.column] -= a;
          row.b -= a * v.offset;
          break;
        case Transform::kFree:
          row.a[v.column] += a;
          row.a[v.column + 1] -= a;
          break;
      }
    }
    rows.push_back(std::move(row));
  }
  const std::size_t original_rows = rows.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (vars[j].kind == Transform::kShift && std::isfinite(lp.upper[j])) {
      InternalRow row{std::vector<double>(structural, 0.0), Sense::kLessEqual,
                      lp.upper[j] - lp.lower[j]};
      row.a[vars[j].column] = 1.0;
      rows.push_back(std::move(row));
    }
  }
  for (auto& row : rows) {
    if (row.b < 0.0) {
      for (double& a : row.a) a = -a;
      row.b = -row.b;
      row.negated = true;
      if (row.sense == Sense::kLessEqual) row.sense = Sense::kGreaterEqual;
      else if (row.sense == Sense::kGreaterEqual) row.sense = Sense::kLessEqual;
    }
  }

  // Column layout: structural | surplus (>= rows) | unit column per row.
  const std::size_t m = rows.size();
  std::size_t surplus_count = 0;
  for (const auto& row : rows)
    if (row.sense == Sense::kGreaterEqual) ++surplus_count;
  const std::size_t unit_begin = structural + surplus_count;
  const std::size_t cols = unit_begin + m;

  Tableau t(m, cols);
  std::vector<bool> artificial(cols, false);
  std::size_t surplus = structural;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < structural; ++c) t.at(r, c) = rows[r].a[c];
    if (rows[r].sense == Sense::kGreaterEqual) t.at(r, surplus++) = -1.0;
    t.at(r, unit_begin + r) = 1.0;
    t.rhs(r) = rows[r].b;
    t.basis()[r] = unit_begin + r;
    if (rows[r].sense != Sense::kLessEqual) artificial[unit_begin + r] = true;
  }

  LpSolution sol;
  std::size_t iterations = 0;
  std::vector<bool> may_enter(cols, true);

  const bool need_phase_one = std::find(artificial.begin(), artificial.end(), true) != artificial.end();
  if (need_phase_one) {
    std::vector<double> cost(cols, 0.0);
    for (std::size_t c = 0; c < cols; ++c)
      if (artificial[c]) cost[c] = -1.0;
    std::vector<double> d = t.reduced_costs(cost);
    const PhaseResult res = run_simplex(t, d, may_enter, opt, iterations);
    if (res == PhaseResult::kIterationLimit) {
      sol.status = LpStatus::kIterationLimit;
      sol.iterations = iterations;
      return sol;
    }
    double infeasibility = 0.0;
    double scale = 1.0;
    for (std::size_t r = 0; r < m; ++r) {
      scale = std::max(scale, std::abs(rows[r].b));
      if (artificial[t.basis()[r]]) infeasibility += std::max(t.rhs(r), 0.0);
    }
    if (infeasibility > opt.feasibility_tolerance * scale) {
      sol.status = LpStatus::kInfeasible;
      sol.iterations = iterations;
      return sol;
    }
    // Drive zero-level artificials out of the basis where possible.
    for (std::size_t r = 0; r < m; ++r) {
      if (!artificial[t.basis()[r]]) continue;
      for (std::size_t c = 0; c < unit_begin; ++c) {
        if (std::abs(t.at(r, c)) > 1e-9) {
          t.pivot(r, c, d);
          ++iterations;
          break;
        }
      }
    }
    for (std::size_t c = 0; c < cols; ++c)
      if (artificial[c]) may_enter[c] = false;
  }

  std::vector<double> cost(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double c = dir * lp.objective[j];
    const VariableMap& v = vars[j];
    switch (v.kind) {
      case Transform::kShift: cost[v.column] += c; break;
      case Transform::kMirror: cost[v.column] -= c; break;
      case Transform::kFree:
        cost[v.column] += c;
        cost[v.column + 1] -= c;
        break;
    }
  }
  std::vector<double> d = t.reduced_costs(cost);
  const PhaseResult res = run_simplex(t, d, may_enter, opt, iterations);
  sol.iterations = iterations;
  if (res == PhaseResult::kIterationLimit) {
    sol.status = LpStatus::kIterationLimit;
    return sol;
  }
  if (res == PhaseResult::kUnbounded) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }

  std::vector<double> internal(cols, 0.0);
  for (std::size_t r = 0; r < m; ++r) internal[t.basis()[r]] = std::max(t.rhs(r), 0.0);

  sol.status = LpStatus::kOptimal;
  sol.x.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const VariableMap& v = vars[j];
    switch (v.kind) {
      case Transform::kShift: sol.x[j] = v.offset + internal[v.column]; break;
      case Transform::kMirror: sol.x[j] = v.offset - internal[v.column]; break;
      case Transform::kFree: sol.x[j] = internal[v.column] - internal[v.column + 1]; break;
    }
  }

  sol.duals.assign(original_rows, 0.0);
  for (std::size_t r = 0; r < original_rows; ++r) {
    double y = -d[unit_begin + r];
    if (rows[r].negated) y = -y;
    sol.duals[r] = dir * y;
  }

  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];
  sol.reduced_costs.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double rc = lp.objective[j];
    for (std::size_t r = 0; r < original_rows; ++r) rc -= lp.rows[r][j] * sol.duals[r];
    sol.reduced_costs[j] = rc;
  }
  sol.dual_objective = 0.0;
  for (std::size_t r = 0; r < original_rows; ++r) sol.dual_objective += lp.rhs[r] * sol.duals[r];
  for (std::size_t j = 0; j < n; ++j) sol.dual_objective += sol.reduced_costs[j] * sol.x[j];
  return sol;
}

}  // namespace jrc
