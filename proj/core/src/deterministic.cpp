#include "jrc/deterministic.hpp"

#include <stdexcept>

#include "jrc/parallel.hpp"
#include "jrc/robust.hpp"

namespace jrc {

AuctionOutcome det_run(const Matrix& v, const std::vector<double>& budgets,
                       const std::vector<double>& costs, Rng& rng,
                       const DeterministicOptions& options) {
  const std::size_t n = v.rows();
  const std::size_t m = v.cols();
  for (double b : v.data())
    if (!(b >= 0.0)) throw std::invalid_argument("bids must be >= 0");

  const AllocationResult nominal = solve_allocation(welfare_problem(v, costs, budgets));
  const Matrix& x = nominal.allocation;
  const PricingDuals duals = solve_pricing_dual(v, costs, budgets, {});

  Matrix r(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) r(i, j) = duals.omega[j] + v(i, j) * duals.phi[i] + costs[j];

  std::vector<Matrix> without(n);
  parallel_for(n, options.threads, [&](std::size_t k) {
    without[k] = solve_allocation(welfare_problem(v, costs, budgets, k)).allocation;
  });

  std::vector<double> pay(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (x.row_sum(k) <= 1e-12) continue;
    double p = 0.0;
    for (std::size_t j = 0; j < m; ++j) p += x(k, j) * r(k, j);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < m; ++j) {
        p += (v(i, j) - r(i, j)) * without[k](i, j);
        if (options.symmetric_payments) p -= (v(i, j) - r(i, j)) * x(i, j);
      }
    }
    pay[k] = p;
  }

  AuctionOutcome out = empty_outcome("deterministic", n, m);
  out.fractional = x;
  out.nominal_allocation = x;
  out.reservation_prices = std::move(r);
  out.payments = std::move(pay);
  out.social_welfare = allocation_welfare(x, v, costs);
  out.rounding = round_allocation(out.fractional, out.payments, rng);
  return out;
}

std::vector<double> det_true_utility(const AuctionOutcome& outcome, const Matrix& true_valuations) {
  return fractional_utilities(outcome, true_valuations);
}

}  // namespace jrc
