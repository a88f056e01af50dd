#include "jrc/rmca.hpp"

#include <cmath>
#include <stdexcept>

#include "jrc/hash.hpp"
#include "jrc/parallel.hpp"

namespace jrc {

namespace {

constexpr double kZeroAllocation = 1e-12;

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

}  // namespace

std::uint64_t phase_a_key(const UncertaintySet& set, const std::vector<double>& budgets,
                          const std::vector<double>& costs) {
  Fnv1a h;
  h.value(set_hash(set));
  h.values(budgets);
  h.values(costs);
  return h.digest();
}

RmcaPhaseAOutput rmca_phase_a(const UncertaintySet& set, const std::vector<double>& budgets,
                              const std::vector<double>& costs) {
  RobustNominalResult nominal = solve_robust_nominal(set, costs, budgets);
  RmcaPhaseAOutput out;
  out.reservation_prices = reservation_prices(nominal, costs);
  out.nominal_allocation = std::move(nominal.nominal_allocation);
  out.worst_case_valuations = std::move(nominal.worst_case_valuations);
  out.omega = std::move(nominal.omega);
  out.phi = std::move(nominal.phi);
  out.psi = std::move(nominal.psi);
  out.worst_profiles = std::move(nominal.worst_profiles);
  out.objective = nominal.objective;
  out.key = phase_a_key(set, budgets, costs);
  return out;
}

const RmcaPhaseAOutput& RmcaPhaseACache::get(const UncertaintySet& set,
                                             const std::vector<double>& budgets,
                                             const std::vector<double>& costs) {
  const std::uint64_t key = phase_a_key(set, budgets, costs);
  {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end()) {
      ++hits_;
      return it->second;
    }
  }
  RmcaPhaseAOutput fresh = rmca_phase_a(set, budgets, costs);
  std::lock_guard lock(mutex_);
  ++misses_;
  return entries_.emplace(key, std::move(fresh)).first->second;
}

AuctionOutcome rmca_phase_b(const Matrix& v, const RmcaPhaseAOutput& a, const UncertaintySet& set,
                            const std::vector<double>& budgets, const std::vector<double>& costs,
                            Rng& rng, const RmcaOptions& options) {
  const std::size_t n = set_nodes(set);
  const std::size_t m = set_channels(set);
  const Matrix& x = a.nominal_allocation;
  const Matrix& r = a.reservation_prices;
  if (!x.same_shape(v) || !r.same_shape(v) || v.rows() != n || v.cols() != m)
    throw std::invalid_argument("rmca_phase_b: bids do not match phase-a output");
  if (budgets.size() != n || costs.size() != m)
    throw std::invalid_argument("rmca_phase_b: budgets or costs have the wrong length");

  AuctionOutcome out = empty_outcome("rmca", n, m);
  out.reservation_prices = r;
  out.nominal_allocation = x;
  if (!contains(set, v)) {
    out.rejected = true;
    return out;
  }

  const double psi_default = 0.0;
  std::vector<double> committed(n, 0.0);  // sum_j x*_ij r*_ij
  std::vector<double> robust_credit(n, 0.0);  // sum_j x*_ij psi_i u-bar^i_j
  for (std::size_t i = 0; i < n; ++i) {
    const double psi = a.psi.empty() ? psi_default : a.psi[i];
    for (std::size_t j = 0; j < m; ++j) {
      committed[i] += x(i, j) * r(i, j);
      robust_credit[i] += x(i, j) * psi * a.worst_profiles[i][j];
    }
  }

  AllocationProblem adapted;
  adapted.objective = Matrix(n, m);
  adapted.budget_coef = Matrix(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    // The budget row must hold for every profile in the set, so the binding
    // profile is the one maximising the spend.
    const std::vector<double> top = best_case_profile(set, x, i);
    for (std::size_t j = 0; j < m; ++j) {
      adapted.objective(i, j) = v(i, j) - costs[j] - r(i, j);
      adapted.budget_coef(i, j) = top[j];
    }
  }
  adapted.capacity.assign(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) adapted.capacity[j] = std::max(0.0, 1.0 - x.col_sum(j));
  adapted.budget_rhs.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    adapted.budget_rhs[i] = budgets[i] - committed[i] + robust_credit[i];
  adapted.active.assign(n, true);

  const AllocationResult with_all = solve_allocation(adapted);
  const Matrix& y = with_all.allocation;

  std::vector<Matrix> without(n);
  parallel_for(n, options.threads, [&](std::size_t k) {
    AllocationProblem removed = adapted;
    removed.active[k] = false;
    for (std::size_t i = 0; i < n; ++i) removed.budget_rhs[i] = budgets[i] - committed[i];
    without[k] = solve_allocation(removed).allocation;
  });

  Matrix frac(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) frac(i, j) = y(i, j) + x(i, j);

  std::vector<double> pay(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double psi = a.psi.empty() ? psi_default : a.psi[k];
    double p = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      p += y(k, j) * r(k, j) + x(k, j) * r(k, j) - x(k, j) * psi * a.worst_profiles[k][j];
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < m; ++j)
        p += (v(i, j) - r(i, j)) * (without[k](i, j) - y(i, j));
    }
    pay[k] = frac.row_sum(k) > kZeroAllocation ? p : 0.0;
  }

  out.fractional = std::move(frac);
  out.payments = std::move(pay);
  out.adapted_allocation = y;
  out.social_welfare = allocation_welfare(out.fractional, v, costs);
  out.rounding = round_allocation(out.fractional, out.payments, rng);
  return out;
}

bool PropertyReport::individually_rational() const {
  for (std::size_t i = 0; i < mean_utility.size(); ++i)
    if (mean_utility[i] < -3.0 * utility_stderr[i] - 1e-9) return false;
  return true;
}

bool PropertyReport::budget_feasible(const std::vector<double>& budgets) const {
  for (std::size_t i = 0; i < mean_payment.size(); ++i)
    if (mean_payment[i] > budgets.at(i) + 3.0 * payment_stderr[i] + 1e-9) return false;
  return true;
}

bool PropertyReport::incentive_compatible() const {
  return mean_misreport_gain <= 3.0 * misreport_gain_stderr + 1e-9;
}

PropertyReport check_mechanism_properties(const IntervalUncertainty& set,
                                          const std::vector<double>& budgets,
                                          const std::vector<double>& costs, std::size_t trials,
                                          Rng& rng) {
  const UncertaintySet view = set;
  const std::size_t n = set.nodes();
  const RmcaPhaseAOutput phase_a = rmca_phase_a(view, budgets, costs);
  std::vector<std::vector<double>> utility(n), payment(n);
  std::vector<double> gains;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  PropertyReport report;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const Matrix truth = sample_realized_bids(set, rng);
    const AuctionOutcome honest = rmca_phase_b(truth, phase_a, view, budgets, costs, rng);
    if (honest.rejected) ++report.rejected;
    const std::vector<double> u = fractional_utilities(honest, truth);
    for (std::size_t i = 0; i < n; ++i) {
      utility[i].push_back(u[i]);
      payment[i].push_back(honest.payments[i]);
    }
    const std::size_t k = pick(rng);
    const Matrix other = sample_realized_bids(set, rng);
    Matrix lie = truth;
    for (std::size_t j = 0; j < lie.cols(); ++j) lie(k, j) = other(k, j);
    const AuctionOutcome bent = rmca_phase_b(lie, phase_a, view, budgets, costs, rng);
    gains.push_back(fractional_utilities(bent, truth)[k] - u[k]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    report.mean_utility.push_back(mean_of(utility[i]));
    report.utility_stderr.push_back(stderr_of(utility[i]));
    report.mean_payment.push_back(mean_of(payment[i]));
    report.payment_stderr.push_back(stderr_of(payment[i]));
  }
  report.mean_misreport_gain = mean_of(gains);
  report.misreport_gain_stderr = stderr_of(gains);
  return report;
}

}  // namespace jrc
