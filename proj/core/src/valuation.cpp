#include "jrc/valuation.hpp"

#include <stdexcept>

#include "jrc/parallel.hpp"

namespace jrc {

namespace {
enum : std::uint64_t { kRateStream = 0x52415445, kWardenSeed = 0x5741524e };
}  // namespace

MarketMetrics compute_market_metrics(const MarketScenario& sc, const MetricsConfig& config) {
  sc.validate();
  const std::size_t n = sc.num_nodes();
  const std::size_t m = sc.num_channels();
  MarketMetrics out{Matrix(n, m), Matrix(n, m), Matrix(n, m), Matrix(n, m), Matrix(n, m)};
  parallel_for(n * m, config.warden.threads, [&](std::size_t k) {
    const std::size_t i = k / m;
    const std::size_t j = k % m;
    Rng rng = make_rng(sc.seed, {kRateStream, i, j});
    out.cc(i, j) = covert_cc(sc.links(i, j), config.rate_samples, rng).value;
    out.mi(i, j) = covert_mi(sc.links(i, j), config.rate_samples, rng).value;
    const NodeSpec& node = sc.nodes[i];
    out.value_scale(i, j) =
        valuation(sc.indicator[i][j] != 0, node.eta_mi, node.eta_cc, out.mi(i, j), out.cc(i, j), 1.0);
  });
  const WardenBoxResult nominal = market_uncertainty(sc, out, Position3D{}, config.warden);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      out.dep(i, j) = nominal.deps(i, j).nominal;
      out.nominal(i, j) = out.value_scale(i, j) * out.dep(i, j);
    }
  }
  return out;
}

Matrix valuations_at(const MarketMetrics& metrics, const Matrix& dep) {
  Matrix v(dep.rows(), dep.cols());
  for (std::size_t k = 0; k < v.size(); ++k) v.data()[k] = metrics.value_scale.data()[k] * dep.data()[k];
  return v;
}

WardenBoxResult market_uncertainty(const MarketScenario& sc, const MarketMetrics& metrics,
                                   const Position3D& half_width, const WardenSearchConfig& config,
                                   const Grid<DepRange>* warm_start) {
  return build_interval_from_warden_box(sc.links, metrics.value_scale, half_width, config,
                                        derive_seed(sc.seed, {kWardenSeed}), warm_start);
}

WardenDepModel market_warden_model(const MarketScenario& sc, std::size_t i, std::size_t j,
                                   const WardenSearchConfig& config) {
  return WardenDepModel(sc.links(i, j), config.samples,
                        derive_seed(derive_seed(sc.seed, {kWardenSeed}), {i, j}), config.threshold);
}

Matrix market_dep_at(const MarketScenario& sc, const std::vector<Position3D>& wardens,
                     const WardenSearchConfig& config) {
  const std::size_t n = sc.num_nodes();
  const std::size_t m = sc.num_channels();
  if (wardens.size() != n) throw std::invalid_argument("one warden position per node expected");
  Matrix dep(n, m);
  parallel_for(n * m, config.threads, [&](std::size_t k) {
    const std::size_t i = k / m;
    const std::size_t j = k % m;
    dep(i, j) = market_warden_model(sc, i, j, config).channel_dep(wardens[i]);
  });
  return dep;
}

}  // namespace jrc
