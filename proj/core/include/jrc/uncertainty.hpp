#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "jrc/covert_metrics.hpp"
#include "jrc/matrix.hpp"
#include "jrc/pso.hpp"
#include "jrc/random.hpp"

namespace jrc {

/// Box of valuations center +- radius per (node, channel). When the set was
/// built from a warden box it also remembers the DEP range and the
/// DEP-free valuation factor, so realised bids can be drawn through DEP.
struct IntervalUncertainty {
  Matrix center;
  Matrix radius;
  std::optional<Matrix> dep_min;
  std::optional<Matrix> dep_max;
  std::optional<Matrix> value_scale;

  static IntervalUncertainty from_bounds(const Matrix& lower, const Matrix& upper);

  std::size_t nodes() const { return center.rows(); }
  std::size_t channels() const { return center.cols(); }
  Matrix lower() const;
  Matrix upper() const;
  void validate() const;
  bool has_dep_range() const { return dep_min && dep_max && value_scale; }
};

/// Per-channel correlated set: v_ij = f_j + y_ij with f_j in [f_min, f_max]
/// and |sum_i y_ij - N mu_j| <= theta sqrt(N) delta_j. Each component is
/// additionally confined to mu_j +- component_span * delta_j so the set is
/// bounded.
struct HistoricalUncertainty {
  std::size_t nodes = 0;
  std::vector<double> factor_min;
  std::vector<double> factor_max;
  std::vector<double> component_mean;
  std::vector<double> component_std;
  double theta = 1.0;
  double component_span = 3.0;

  std::size_t channels() const { return factor_min.size(); }
  void validate() const;
  /// Matrix with f_j at the middle of its range and y_ij = mu_j.
  Matrix center() const;
  /// Feasible interval of the common factor f_j given one column of bids;
  /// empty (first > second) when the column is outside the set.
  std::pair<double, double> factor_range(std::size_t channel, std::span<const double> column) const;
};

using UncertaintySet = std::variant<IntervalUncertainty, HistoricalUncertainty>;

std::size_t set_nodes(const UncertaintySet& set);
std::size_t set_channels(const UncertaintySet& set);
/// Stable 64-bit fingerprint of the set contents.
std::uint64_t set_hash(const UncertaintySet& set);

bool contains(const IntervalUncertainty& set, const Matrix& bids);
bool contains(const HistoricalUncertainty& set, const Matrix& bids);
bool contains(const UncertaintySet& set, const Matrix& bids);

/// Minimiser over the set of sum_j x_ij u_ij for bidder i.
std::vector<double> worst_case_profile(const UncertaintySet& set, const Matrix& x, std::size_t i);
/// Maximiser over the set of sum_j y_ij u_ij for bidder i.
std::vector<double> best_case_profile(const UncertaintySet& set, const Matrix& y, std::size_t i);

/// Draws DEP uniformly within each stored range and maps it through the
/// valuation; falls back to uniform valuations when no DEP range is stored.
Matrix sample_realized_bids(const IntervalUncertainty& set, Rng& rng);

/// Fits a historical set from bid snapshots: f_j is the per-snapshot
/// median over nodes, its range the min/max over snapshots, and the
/// component statistics come from the residuals.
HistoricalUncertainty fit_historical(const std::vector<Matrix>& history, double theta,
                                     double component_span = 3.0);

// ---------------------------------------------------------------------------
// Warden-box interval construction

struct WardenBox {
  Position3D center;
  Position3D half_width;

  bool contains(const Position3D& p) const;
  Position3D clamp(const Position3D& p) const;
};

struct WardenSearchConfig {
  PsoConfig pso;
  std::size_t grid_per_axis = 5;
  std::size_t samples = 256;
  ThresholdSearchConfig threshold;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct DepRange {
  double nominal = 0.0;
  double min = 0.0;
  double max = 0.0;
  Position3D argmin;
  Position3D argmax;
};

struct WardenBoxResult {
  IntervalUncertainty set;
  Grid<DepRange> deps;
};

/// For every (node, channel) searches the warden box centred on that link's
/// warden for the smallest and largest channel DEP (coarse grid, then PSO),
/// and turns them into valuation intervals value_scale * [dep_min, dep_max].
/// Extremal points of a previous, smaller box passed in `warm_start` are
/// re-evaluated first so nested boxes give nested intervals.
WardenBoxResult build_interval_from_warden_box(const Grid<CovertLinkScenario>& links,
                                               const Matrix& value_scale,
                                               const Position3D& half_width,
                                               const WardenSearchConfig& config,
                                               std::uint64_t seed,
                                               const Grid<DepRange>* warm_start = nullptr);

}  // namespace jrc
