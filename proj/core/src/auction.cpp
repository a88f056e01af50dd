#include "jrc/auction.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace jrc {

namespace {
constexpr double kColumnTolerance = 1e-8;
constexpr double kZeroAllocation = 1e-12;
}  // namespace

std::vector<double> RoundingResult::charges_per_node(std::size_t nodes) const {
  std::vector<double> total(nodes, 0.0);
  for (std::size_t j = 0; j < winner.size(); ++j)
    if (winner[j] != kUnallocated) total.at(static_cast<std::size_t>(winner[j])) += charge[j];
  return total;
}

std::vector<double> RoundingResult::wins_per_node(std::size_t nodes) const {
  std::vector<double> wins(nodes, 0.0);
  for (long w : winner)
    if (w != kUnallocated) wins.at(static_cast<std::size_t>(w)) += 1.0;
  return wins;
}

RoundingResult round_allocation(const Matrix& a, const std::vector<double>& p, Rng& rng) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  if (p.size() != n) throw std::invalid_argument("round_allocation: one payment per node required");
  std::vector<double> per_channel(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double total = a.row_sum(i);
    per_channel[i] = total > kZeroAllocation ? p[i] / total : 0.0;
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RoundingResult out;
  out.winner.assign(m, kUnallocated);
  out.charge.assign(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double column = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (a(i, j) < -kColumnTolerance) throw std::invalid_argument("negative allocation probability");
      column += a(i, j);
    }
    if (column > 1.0 + kColumnTolerance)
      throw std::invalid_argument("allocation column " + std::to_string(j) + " sums to " +
                             std::to_string(column));
    const double u = unit(rng);
    double cum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cum += std::max(a(i, j), 0.0);
      if (u < cum) {
        out.winner[j] = static_cast<long>(i);
        out.charge[j] = per_channel[i];
        break;
      }
    }
  }
  return out;
}

std::vector<double> fractional_utilities(const AuctionOutcome& outcome, const Matrix& v) {
  const Matrix& a = outcome.fractional;
  if (!a.same_shape(v)) throw std::invalid_argument("valuation shape does not match outcome");
  std::vector<double> u(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) u[i] += v(i, j) * a(i, j);
    u[i] -= outcome.payments.at(i);
  }
  return u;
}

double allocation_welfare(const Matrix& a, const Matrix& v, const std::vector<double>& costs) {
  if (!a.same_shape(v) || costs.size() != a.cols())
    throw std::invalid_argument("allocation_welfare: shape mismatch");
  double w = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) w += (v(i, j) - costs[j]) * a(i, j);
  return w;
}

AuctionOutcome empty_outcome(std::string mechanism, std::size_t n, std::size_t m) {
  AuctionOutcome o;
  o.mechanism = std::move(mechanism);
  o.fractional = Matrix(n, m);
  o.payments.assign(n, 0.0);
  o.reservation_prices = Matrix(n, m);
  o.nominal_allocation = Matrix(n, m);
  o.adapted_allocation = Matrix(n, m);
  o.rounding.winner.assign(m, kUnallocated);
  o.rounding.charge.assign(m, 0.0);
  return o;
}

}  // namespace jrc
