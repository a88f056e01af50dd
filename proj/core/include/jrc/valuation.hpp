#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "jrc/matrix.hpp"
#include "jrc/scenario.hpp"
#include "jrc/uncertainty.hpp"

namespace jrc {

struct MetricsConfig {
  std::size_t rate_samples = 2000;  // per covert CC / MI estimate
  WardenSearchConfig warden;
};

/// Per-(node, channel) covert metrics of a market and the valuations built
/// from them. value_scale is the DEP-free factor indicator * (eta_mi MI +
/// eta_cc CC); nominal = value_scale * DEP at the believed warden position.
struct MarketMetrics {
  Matrix cc;
  Matrix mi;
  Matrix dep;
  Matrix value_scale;
  Matrix nominal;
};

MarketMetrics compute_market_metrics(const MarketScenario& scenario, const MetricsConfig& config);

/// Valuation matrix for a given DEP matrix.
Matrix valuations_at(const MarketMetrics& metrics, const Matrix& dep);

/// Warden-box interval set for the market, one box per node centred on its warden.
WardenBoxResult market_uncertainty(const MarketScenario& scenario, const MarketMetrics& metrics,
                                   const Position3D& half_width, const WardenSearchConfig& config,
                                   const Grid<DepRange>* warm_start = nullptr);

/// Detection model of link (i, j) with the fading draws used by market_uncertainty.
WardenDepModel market_warden_model(const MarketScenario& scenario, std::size_t i, std::size_t j,
                                   const WardenSearchConfig& config);

/// Channel DEP of every link with node i's warden placed at wardens[i].
Matrix market_dep_at(const MarketScenario& scenario, const std::vector<Position3D>& wardens,
                     const WardenSearchConfig& config);

}  // namespace jrc
