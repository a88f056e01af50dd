#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "jrc/matrix.hpp"
#include "jrc/random.hpp"

namespace jrc {

inline constexpr long kUnallocated = -1;

/// Integral outcome of one randomised rounding: per channel the winning
/// node (or kUnallocated) and the amount charged to it for that channel.
struct RoundingResult {
  std::vector<long> winner;
  std::vector<double> charge;

  /// Total charge per node.
  std::vector<double> charges_per_node(std::size_t nodes) const;
  /// Number of channels won per node.
  std::vector<double> wins_per_node(std::size_t nodes) const;
};

struct AuctionOutcome {
  std::string mechanism;
  bool rejected = false;
  Matrix fractional;            // a*
  std::vector<double> payments; // p
  Matrix reservation_prices;    // r*
  Matrix nominal_allocation;    // x*
  Matrix adapted_allocation;    // y (zero for the deterministic mechanism)
  double social_welfare = 0.0;  // sum (v - c) a* at the submitted bids
  RoundingResult rounding;
};

/// Draws each channel's winner with probability a*_ij (none with the
/// remaining mass) and charges p_i / sum_j a*_ij per channel won.
RoundingResult round_allocation(const Matrix& fractional, const std::vector<double>& payments, Rng& rng);

/// sum_j v_ij a*_ij - p_i per node.
std::vector<double> fractional_utilities(const AuctionOutcome& outcome, const Matrix& valuations);

double allocation_welfare(const Matrix& allocation, const Matrix& valuations,
                          const std::vector<double>& costs);

/// Outcome with no allocation and no payments.
AuctionOutcome empty_outcome(std::string mechanism, std::size_t nodes, std::size_t channels);

}  // namespace jrc
