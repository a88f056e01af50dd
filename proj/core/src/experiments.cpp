#include "jrc/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "jrc/deterministic.hpp"
#include "jrc/parallel.hpp"
#include "jrc/rmca.hpp"

namespace jrc {

namespace {

enum : std::uint64_t {
  kDepStream = 0x444550,
  kCcStream = 0x4343,
  kMiStream = 0x4d49,
  kRealizedStream = 0x5245414c,
  kRoundingStream = 0x524e44,
};

double truncated_normal(Rng& rng, double mean, double sd) {
  std::normal_distribution<double> normal(mean, sd);
  for (;;) {
    const double x = normal(rng);
    if (x >= 0.0) return x;
  }
}

std::vector<double> axis_points(double c, double h, std::size_t count) {
  if (h == 0.0 || count <= 1) return {c};
  std::vector<double> pts(count);
  for (std::size_t k = 0; k < count; ++k)
    pts[k] = c - h + 2.0 * h * static_cast<double>(k) / static_cast<double>(count - 1);
  return pts;
}

Matrix clamp_into(const IntervalUncertainty& set, const Matrix& v) {
  const Matrix lo = set.lower();
  const Matrix hi = set.upper();
  Matrix out = v;
  for (std::size_t k = 0; k < out.size(); ++k)
    out.data()[k] = std::clamp(out.data()[k], lo.data()[k], hi.data()[k]);
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

RandomMarket random_market(std::size_t n, std::size_t m, Rng& rng, const RandomMarketConfig& cfg) {
  if (n == 0 || m == 0) throw std::invalid_argument("random_market needs n, m >= 1");
  std::uniform_real_distribution<double> value(cfg.value_min, cfg.value_max);
  std::uniform_real_distribution<double> frac(0.0, cfg.radius_fraction_max);
  std::uniform_real_distribution<double> budget(cfg.budget_min, cfg.budget_max);
  RandomMarket mk;
  mk.set.center = Matrix(n, m);
  mk.set.radius = Matrix(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      mk.set.center(i, j) = value(rng);
      mk.set.radius(i, j) = std::min(frac(rng), 1.0) * mk.set.center(i, j);
    }
  }
  for (std::size_t i = 0; i < n; ++i) mk.budgets.push_back(budget(rng));
  for (std::size_t j = 0; j < m; ++j) mk.costs.push_back(truncated_normal(rng, cfg.cost_mean, cfg.cost_sd));
  return mk;
}

// ---------------------------------------------------------------------------

std::vector<double> dbw_grid(double from_dbw, double to_dbw, double step_db) {
  if (!(step_db > 0.0) || to_dbw < from_dbw) throw std::invalid_argument("bad dBW grid");
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((to_dbw - from_dbw) / step_db + 1e-9)) + 1;
  for (std::size_t k = 0; k < count; ++k)
    out.push_back(dbw_to_watts(from_dbw + step_db * static_cast<double>(k)));
  return out;
}

std::vector<JammingPoint> sweep_jamming(const CovertLinkScenario& link,
                                        const std::vector<double>& power_grid_w,
                                        std::size_t samples, std::uint64_t seed) {
  if (!std::is_sorted(power_grid_w.begin(), power_grid_w.end()))
    throw std::invalid_argument("jamming power grid must ascend");
  std::vector<double> grid{0.0};
  for (double p : power_grid_w) {
    if (p < 0.0) throw std::invalid_argument("jamming power must be >= 0");
    if (p > 0.0) grid.push_back(p);
  }
  std::vector<JammingPoint> out(grid.size());
  parallel_for(grid.size(), 0, [&](std::size_t k) {
    CovertLinkScenario at = link;
    at.jamming_power_w = grid[k];
    const WardenDepModel model(at, samples, derive_seed(seed, {kDepStream}));
    Rng cc_rng = make_rng(seed, {kCcStream});
    Rng mi_rng = make_rng(seed, {kMiStream});
    out[k] = {grid[k], model.channel_dep(at.warden_pos), covert_cc(at, samples, cc_rng),
              covert_mi(at, samples, mi_rng)};
  });
  return out;
}

CsvTable jamming_table(const std::vector<JammingPoint>& points, std::uint64_t seed) {
  CsvTable t("jamming-sweep", 1,
             {"seed", "jamming_w", "jamming_dbw", "dep", "cc", "cc_se", "mi", "mi_se"});
  for (const auto& p : points) {
    const double dbw = p.jamming_w > 0.0 ? watts_to_dbw(p.jamming_w)
                                         : -std::numeric_limits<double>::infinity();
    t.row() << static_cast<unsigned long long>(seed) << p.jamming_w << dbw << p.dep << p.cc.value
            << p.cc.std_error << p.mi.value << p.mi.std_error;
  }
  return t;
}

// ---------------------------------------------------------------------------

std::vector<UncertaintyPoint> sweep_uncertainty(const MarketScenario& sc,
                                                const std::vector<double>& widths,
                                                const UncertaintySweepConfig& cfg) {
  if (!std::is_sorted(widths.begin(), widths.end()) ||
      (!widths.empty() && widths.front() < 0.0))
    throw std::invalid_argument("box widths must be >= 0 and ascending");
  const MarketMetrics metrics = compute_market_metrics(sc, cfg.metrics);
  const std::vector<double> costs = sc.costs();
  const std::vector<double> budgets = sc.budgets();

  Rng det_rng = make_rng(sc.seed, {kRoundingStream});
  const double det_welfare = det_run(metrics.nominal, budgets, costs, det_rng).social_welfare;

  std::vector<UncertaintyPoint> out;
  std::optional<Grid<DepRange>> previous;
  for (std::size_t k = 0; k < widths.size(); ++k) {
    const double w = widths[k];
    const WardenBoxResult box = market_uncertainty(sc, metrics, {0.5 * w, 0.5 * w, 0.0},
                                                   cfg.metrics.warden,
                                                   previous ? &*previous : nullptr);
    previous = box.deps;
    const UncertaintySet set = box.set;
    const RmcaPhaseAOutput phase_a = rmca_phase_a(set, budgets, costs);

    UncertaintyPoint p;
    p.width_m = w;
    p.robust_welfare = phase_a.objective;
    p.deterministic_welfare = det_welfare;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      Rng rng = make_rng(sc.seed, {kRealizedStream, k, t});
      const Matrix bids = sample_realized_bids(box.set, rng);
      const AuctionOutcome o = rmca_phase_b(bids, phase_a, set, budgets, costs, rng);
      if (o.rejected) ++p.rejected;
      p.realized_rmca_welfare += o.social_welfare;
    }
    if (cfg.trials > 0) p.realized_rmca_welfare /= static_cast<double>(cfg.trials);
    double span = 0.0;
    for (double r : box.set.radius.data()) span += 2.0 * r;
    p.mean_interval = span / static_cast<double>(box.set.radius.size());
    out.push_back(p);
  }
  return out;
}

CsvTable uncertainty_table(const std::vector<UncertaintyPoint>& points, std::uint64_t seed) {
  CsvTable t("uncertainty-sweep", 1,
             {"seed", "width_m", "robust_welfare", "deterministic_welfare", "realized_rmca_welfare",
              "rejected", "mean_interval"});
  for (const auto& p : points)
    t.row() << static_cast<unsigned long long>(seed) << p.width_m << p.robust_welfare
            << p.deterministic_welfare << p.realized_rmca_welfare
            << static_cast<unsigned long long>(p.rejected) << p.mean_interval;
  return t;
}

// ---------------------------------------------------------------------------

IrConfig::IrConfig() {
  generator.nodes = 5;
  generator.channels = 3;
  generator.metric_samples = 1000;
  metrics.rate_samples = 1000;
  metrics.warden.pso.particles = 10;
  metrics.warden.pso.iterations = 20;
  metrics.warden.threads = 1;
}

double IrReport::min_rmca_true() const {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) lo = std::min(lo, r.rmca_true);
  return lo;
}

std::size_t IrReport::trials_with_negative_det(double tol) const {
  std::size_t count = 0;
  std::size_t last = static_cast<std::size_t>(-1);
  for (const auto& r : rows) {
    if (r.det_true < -tol && r.trial != last) {
      ++count;
      last = r.trial;
    }
  }
  return count;
}

IrReport experiment_ir_violation(const IrConfig& cfg, bool inside, std::uint64_t seed) {
  const Position3D& h = cfg.half_width;
  std::vector<std::vector<IrRow>> per_trial(cfg.trials);
  parallel_for(cfg.trials, 0, [&](std::size_t t) {
    const std::uint64_t s = derive_seed(seed, {t});
    const MarketScenario sc = generate_scenario(cfg.generator, s);
    const std::size_t n = sc.num_nodes();
    const std::size_t m = sc.num_channels();
    const MarketMetrics metrics = compute_market_metrics(sc, cfg.metrics);
    const WardenBoxResult box = market_uncertainty(sc, metrics, h, cfg.metrics.warden);

    std::vector<Position3D> truth(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<WardenDepModel> models;
      for (std::size_t j = 0; j < m; ++j) models.push_back(market_warden_model(sc, i, j, cfg.metrics.warden));
      const Position3D c = sc.nodes[i].warden;
      Position3D best = c;
      double best_dep = std::numeric_limits<double>::infinity();
      for (double x : axis_points(c.x, h.x, cfg.metrics.warden.grid_per_axis))
        for (double y : axis_points(c.y, h.y, cfg.metrics.warden.grid_per_axis))
          for (double z : axis_points(c.z, h.z, cfg.metrics.warden.grid_per_axis)) {
            double d = 0.0;
            for (const auto& model : models) d += model.channel_dep({x, y, z});
            if (d < best_dep) {
              best_dep = d;
              best = {x, y, z};
            }
          }
      const double f = inside ? 1.0 : cfg.outside_factor;
      truth[i] = {c.x + f * (best.x - c.x), c.y + f * (best.y - c.y), c.z + f * (best.z - c.z)};
    }
    WardenSearchConfig serial = cfg.metrics.warden;
    serial.threads = 1;
    const Matrix v_true = valuations_at(metrics, market_dep_at(sc, truth, serial));
    const std::vector<double> costs = sc.costs();
    const std::vector<double> budgets = sc.budgets();

    Rng rng = make_rng(s, {kRoundingStream});
    const AuctionOutcome det = det_run(metrics.nominal, budgets, costs, rng);
    const std::vector<double> det_exp = fractional_utilities(det, metrics.nominal);
    const std::vector<double> det_true = fractional_utilities(det, v_true);

    const UncertaintySet set = box.set;
    const RmcaPhaseAOutput phase_a = rmca_phase_a(set, budgets, costs);
    const Matrix bids = clamp_into(box.set, v_true);
    const AuctionOutcome rob = rmca_phase_b(bids, phase_a, set, budgets, costs, rng);
    const std::vector<double> rob_exp = fractional_utilities(rob, bids);
    const std::vector<double> rob_true = fractional_utilities(rob, v_true);

    for (std::size_t i = 0; i < n; ++i)
      per_trial[t].push_back({t, s, i, rob.rejected, rob_exp[i], rob_true[i], det_exp[i], det_true[i]});
  });
  IrReport report;
  report.inside = inside;
  for (auto& rows : per_trial) report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  return report;
}

CsvTable ir_table(const IrReport& report) {
  CsvTable t("ir-violation", 1,
             {"case", "trial", "seed", "node", "rmca_rejected", "rmca_expected", "rmca_true",
              "det_expected", "det_true"});
  for (const auto& r : report.rows)
    t.row() << (report.inside ? "inside" : "outside") << static_cast<unsigned long long>(r.trial)
            << static_cast<unsigned long long>(r.seed) << static_cast<unsigned long long>(r.node)
            << r.rmca_rejected << r.rmca_expected << r.rmca_true << r.det_expected << r.det_true;
  return t;
}

// ---------------------------------------------------------------------------

std::vector<BidPoint> sweep_bids(const BidTable& table, const std::vector<double>& increments,
                                 double radius, std::uint64_t seed) {
  if (radius < 0.0) throw std::invalid_argument("radius must be >= 0");
  std::vector<BidPoint> out;
  for (std::size_t k = 0; k < increments.size(); ++k) {
    Matrix bids = table.bids;
    for (std::size_t j = 0; j < bids.cols(); ++j) bids(table.varied_node, j) += increments[k];
    Rng rng = make_rng(seed, {kRoundingStream, k});

    const AuctionOutcome det = det_run(bids, table.budgets, table.costs, rng);

    IntervalUncertainty box;
    box.center = bids;
    box.radius = Matrix(bids.rows(), bids.cols());
    for (double& r : box.radius.data()) r = radius;
    const UncertaintySet set = box;
    const RmcaPhaseAOutput phase_a = rmca_phase_a(set, table.budgets, table.costs);
    const AuctionOutcome rob = rmca_phase_b(bids, phase_a, set, table.budgets, table.costs, rng);

    out.push_back({increments[k], rob.fractional, det.fractional, rob.social_welfare,
                   det.social_welfare});
  }
  return out;
}

CsvTable bids_table(const std::vector<BidPoint>& points, std::uint64_t seed) {
  CsvTable t("bid-sweep", 1,
             {"seed", "increment", "mechanism", "node", "channel", "probability", "welfare"});
  for (const auto& p : points) {
    for (int which = 0; which < 2; ++which) {
      const Matrix& a = which == 0 ? p.rmca_allocation : p.det_allocation;
      const double w = which == 0 ? p.rmca_welfare : p.det_welfare;
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
          t.row() << static_cast<unsigned long long>(seed) << p.increment
                  << (which == 0 ? "rmca" : "deterministic") << static_cast<unsigned long long>(i)
                  << static_cast<unsigned long long>(j) << a(i, j) << w;
    }
  }
  return t;
}

// ---------------------------------------------------------------------------

TimingConfig::TimingConfig() {
  generator.metric_samples = 500;
  metrics.rate_samples = 500;
}

std::vector<TimingPoint> bench_timing(const std::vector<std::size_t>& node_counts,
                                      const std::vector<std::size_t>& channel_counts,
                                      std::size_t reps, std::uint64_t seed,
                                      const TimingConfig& cfg) {
  std::vector<TimingPoint> out;
  for (std::size_t n : node_counts) {
    for (std::size_t m : channel_counts) {
      TimingPoint p{n, m, reps, 0.0, 0.0, 0.0};
      for (std::size_t r = 0; r < reps; ++r) {
        GeneratorConfig gen = cfg.generator;
        gen.nodes = n;
        gen.channels = m;
        const MarketScenario sc = generate_scenario(gen, derive_seed(seed, {n, m, r}));
        const MarketMetrics metrics = compute_market_metrics(sc, cfg.metrics);
        const std::vector<double> costs = sc.costs();
        const std::vector<double> budgets = sc.budgets();
        Rng rng = make_rng(sc.seed, {kRoundingStream});

        auto run_det = [&] {
          const auto t0 = std::chrono::steady_clock::now();
          det_run(metrics.nominal, budgets, costs, rng);
          p.det_seconds += seconds_since(t0);
        };
        auto run_rmca = [&] {
          auto t0 = std::chrono::steady_clock::now();
          const WardenBoxResult box = market_uncertainty(sc, metrics, cfg.half_width, cfg.metrics.warden);
          p.rmca_set_seconds += seconds_since(t0);
          Rng draw = make_rng(sc.seed, {kRealizedStream});
          const Matrix bids = sample_realized_bids(box.set, draw);
          t0 = std::chrono::steady_clock::now();
          const UncertaintySet set = box.set;
          const RmcaPhaseAOutput a = rmca_phase_a(set, budgets, costs);
          rmca_phase_b(bids, a, set, budgets, costs, rng);
          p.rmca_auction_seconds += seconds_since(t0);
        };
        if (r % 2 == 0) {
          run_det();
          run_rmca();
        } else {
          run_rmca();
          run_det();
        }
      }
      if (reps > 0) {
        const double k = static_cast<double>(reps);
        p.det_seconds /= k;
        p.rmca_set_seconds /= k;
        p.rmca_auction_seconds /= k;
      }
      out.push_back(p);
    }
  }
  return out;
}

CsvTable timing_table(const std::vector<TimingPoint>& points, std::uint64_t seed) {
  CsvTable t("bench-timing", 1,
             {"seed", "nodes", "channels", "repetitions", "det_seconds", "rmca_seconds",
              "rmca_set_seconds", "rmca_auction_seconds"});
  for (const auto& p : points)
    t.row() << static_cast<unsigned long long>(seed) << static_cast<unsigned long long>(p.nodes)
            << static_cast<unsigned long long>(p.channels)
            << static_cast<unsigned long long>(p.repetitions) << p.det_seconds << p.rmca_seconds()
            << p.rmca_set_seconds << p.rmca_auction_seconds;
  return t;
}

}  // namespace jrc
