#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "jrc/auction.hpp"
#include "jrc/robust.hpp"
#include "jrc/uncertainty.hpp"

namespace jrc {

/// Offline output of the robust mechanism: everything that depends only on
/// the uncertainty set, budgets and costs.
struct RmcaPhaseAOutput {
  Matrix reservation_prices;
  Matrix nominal_allocation;
  Matrix worst_case_valuations;
  std::vector<double> omega;
  std::vector<double> phi;
  std::vector<double> psi;
  std::vector<std::vector<double>> worst_profiles;
  double objective = 0.0;
  std::uint64_t key = 0;
};

std::uint64_t phase_a_key(const UncertaintySet& set, const std::vector<double>& budgets,
                          const std::vector<double>& costs);

RmcaPhaseAOutput rmca_phase_a(const UncertaintySet& set, const std::vector<double>& budgets,
                              const std::vector<double>& costs);

/// Memoises phase a per (set, budgets, costs) so repeated rounds with the
/// same participants skip the robust solve. Thread-safe.
class RmcaPhaseACache {
 public:
  const RmcaPhaseAOutput& get(const UncertaintySet& set, const std::vector<double>& budgets,
                              const std::vector<double>& costs);
  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  std::mutex mutex_;
  std::map<std::uint64_t, RmcaPhaseAOutput> entries_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

struct RmcaOptions {
  /// Workers for the per-node removal problems; 1 keeps everything serial.
  unsigned threads = 1;
};

/// Online phase: membership gate, adapted allocation, removal problems,
/// payments and randomised rounding.
AuctionOutcome rmca_phase_b(const Matrix& bids, const RmcaPhaseAOutput& phase_a,
                            const UncertaintySet& set, const std::vector<double>& budgets,
                            const std::vector<double>& costs, Rng& rng,
                            const RmcaOptions& options = {});

struct PropertyReport {
  std::size_t trials = 0;
  std::vector<double> mean_utility;
  std::vector<double> utility_stderr;
  std::vector<double> mean_payment;
  std::vector<double> payment_stderr;
  double mean_misreport_gain = 0.0;
  double misreport_gain_stderr = 0.0;
  std::size_t rejected = 0;

  bool individually_rational() const;
  bool budget_feasible(const std::vector<double>& budgets) const;
  bool incentive_compatible() const;
};

/// Samples truthful valuations from the set, runs the mechanism and, for one
/// random node per trial, an in-set misreport; aggregates fractional
/// (expected over rounding) utilities and payments.
PropertyReport check_mechanism_properties(const IntervalUncertainty& set,
                                          const std::vector<double>& budgets,
                                          const std::vector<double>& costs, std::size_t trials,
                                          Rng& rng);

}  // namespace jrc
