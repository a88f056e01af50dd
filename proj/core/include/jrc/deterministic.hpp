#pragma once

#include <vector>

#include "jrc/auction.hpp"
#include "jrc/matrix.hpp"
#include "jrc/random.hpp"

namespace jrc {

struct DeterministicOptions {
  /// Also subtract sum_{i != k} (v - r) x* from p_k, mirroring the robust
  /// mechanism's payment rule. Off by default.
  bool symmetric_payments = false;
  unsigned threads = 1;
};

/// Baseline mechanism that takes the submitted bids at face value.
AuctionOutcome det_run(const Matrix& bids, const std::vector<double>& budgets,
                       const std::vector<double>& costs, Rng& rng,
                       const DeterministicOptions& options = {});

/// sum_j v_ij a*_ij - p_i at the given valuations; negative entries mean the
/// node lost money.
std::vector<double> det_true_utility(const AuctionOutcome& outcome, const Matrix& true_valuations);

}  // namespace jrc
