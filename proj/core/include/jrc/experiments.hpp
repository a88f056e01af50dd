#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "jrc/csv.hpp"
#include "jrc/matrix.hpp"
#include "jrc/random.hpp"
#include "jrc/scenario.hpp"
#include "jrc/uncertainty.hpp"
#include "jrc/valuation.hpp"

namespace jrc {

// ---------------------------------------------------------------------------
// Random desk-scale markets

/// Interval set with uniform centres and per-entry radii, plus budgets and
/// channel costs drawn like the scenario generator's.
struct RandomMarket {
  IntervalUncertainty set;
  std::vector<double> budgets;
  std::vector<double> costs;
};

struct RandomMarketConfig {
  double value_min = 1.0;
  double value_max = 5.0;
  /// Radius as a fraction of the centre, drawn from [0, radius_fraction_max].
  double radius_fraction_max = 0.2;
  double budget_min = 1.5;
  double budget_max = 5.0;
  double cost_mean = 2.0;
  double cost_sd = 1.0;
};

RandomMarket random_market(std::size_t nodes, std::size_t channels, Rng& rng,
                           const RandomMarketConfig& config = {});

// ---------------------------------------------------------------------------
// Jamming-power sweep

struct JammingPoint {
  double jamming_w = 0.0;
  double dep = 0.0;
  McValue cc;
  McValue mi;
};

/// Evaluates dep, cc and mi of `link` at each jamming power with the same
/// fading draws at every point. A zero-power point is always included first.
std::vector<JammingPoint> sweep_jamming(const CovertLinkScenario& link,
                                        const std::vector<double>& power_grid_w,
                                        std::size_t samples, std::uint64_t seed);

/// Powers in watts for from_dbw, from_dbw + step, ..., up to to_dbw.
std::vector<double> dbw_grid(double from_dbw, double to_dbw, double step_db);

CsvTable jamming_table(const std::vector<JammingPoint>& points, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Warden-box width sweep

struct UncertaintyPoint {
  double width_m = 0.0;       // full side of the square warden box
  double robust_welfare = 0.0;
  double deterministic_welfare = 0.0;
  double realized_rmca_welfare = 0.0;
  std::size_t rejected = 0;
  double mean_interval = 0.0;  // mean upper - lower over all entries
};

struct UncertaintySweepConfig {
  MetricsConfig metrics;
  std::size_t trials = 10;  // realized-bid draws per width
};

/// Widths must ascend; each box is warm-started from the previous one so the
/// intervals nest.
std::vector<UncertaintyPoint> sweep_uncertainty(const MarketScenario& scenario,
                                                const std::vector<double>& widths_m,
                                                const UncertaintySweepConfig& config);

CsvTable uncertainty_table(const std::vector<UncertaintyPoint>& points, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Warden displacement

struct IrConfig {
  GeneratorConfig generator;
  MetricsConfig metrics;
  Position3D half_width{10.0, 10.0, 0.0};
  std::size_t trials = 100;
  /// Outside case: the displacement found inside the box is scaled by this.
  double outside_factor = 3.0;

  IrConfig();
};

struct IrRow {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t node = 0;
  bool rmca_rejected = false;
  double rmca_expected = 0.0;
  double rmca_true = 0.0;
  double det_expected = 0.0;
  double det_true = 0.0;
};

struct IrReport {
  bool inside = true;
  std::vector<IrRow> rows;

  double min_rmca_true() const;
  std::size_t trials_with_negative_det(double tol = 1e-6) const;
};

/// Per trial: a fresh scenario, a warden box per node and a true warden at
/// the box point with the lowest mean DEP (scaled outward when `inside` is
/// false). The deterministic mechanism sees the nominal valuations; the
/// robust one sees the true valuations projected onto its set.
IrReport experiment_ir_violation(const IrConfig& config, bool inside, std::uint64_t seed);

CsvTable ir_table(const IrReport& report);

// ---------------------------------------------------------------------------
// Bid increments

struct BidPoint {
  double increment = 0.0;
  Matrix rmca_allocation;
  Matrix det_allocation;
  double rmca_welfare = 0.0;
  double det_welfare = 0.0;
};

/// Raises the varied node's bids by each increment and runs both mechanisms;
/// the robust one uses an interval set of the given radius around the bids.
std::vector<BidPoint> sweep_bids(const BidTable& table, const std::vector<double>& increments,
                                 double radius, std::uint64_t seed);

CsvTable bids_table(const std::vector<BidPoint>& points, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Timing

struct TimingPoint {
  std::size_t nodes = 0;
  std::size_t channels = 0;
  std::size_t repetitions = 0;
  double det_seconds = 0.0;        // mean per run
  double rmca_set_seconds = 0.0;   // warden-box set construction
  double rmca_auction_seconds = 0.0;  // phases a and b

  double rmca_seconds() const { return rmca_set_seconds + rmca_auction_seconds; }
};

struct TimingConfig {
  GeneratorConfig generator;
  MetricsConfig metrics;
  Position3D half_width{5.0, 5.0, 0.0};

  TimingConfig();
};

/// Per grid point and repetition: a generated scenario whose covert metrics
/// are computed untimed. The deterministic mechanism runs on the nominal
/// valuations; the robust one builds its warden-box set and runs both phases
/// on bids realised from it. Repetitions alternate which mechanism goes first.
std::vector<TimingPoint> bench_timing(const std::vector<std::size_t>& node_counts,
                                      const std::vector<std::size_t>& channel_counts,
                                      std::size_t repetitions, std::uint64_t seed,
                                      const TimingConfig& config = {});

CsvTable timing_table(const std::vector<TimingPoint>& points, std::uint64_t seed);

}  // namespace jrc
