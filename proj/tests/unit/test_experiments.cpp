#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "jrc/csv.hpp"
#include "jrc/experiments.hpp"

using namespace jrc;

TEST(Csv, SchemaLineAndFixedWidth) {
  CsvTable t("demo", 2, {"a", "b"});
  t.row() << 1 << 0.5;
  t.row() << "x,y" << 2.0;
  EXPECT_EQ(t.str(), "# schema: demo/2\na,b\n1,0.5\n\"x,y\",2\n");
  EXPECT_THROW(t.add_row({"only one"}), std::logic_error);
  EXPECT_EQ(t.column("b"), 1u);
}

TEST(JammingSweep, ZeroPowerFirstAndRatesFall) {
  const auto pts = sweep_jamming(reference_link(), dbw_grid(-30.0, 10.0, 10.0), 4000, 1);
  ASSERT_EQ(pts.size(), 6u);
  EXPECT_EQ(pts[0].jamming_w, 0.0);
  for (std::size_t k = 1; k < pts.size(); ++k) {
    EXPECT_LE(pts[0].dep, pts[k].dep);
    EXPECT_LE(pts[k].cc.value, pts[k - 1].cc.value);
    EXPECT_LE(pts[k].mi.value, pts[k - 1].mi.value);
  }
  EXPECT_GT(pts.back().dep, 0.9);
  const CsvTable t = jamming_table(pts, 1);
  EXPECT_EQ(t.rows().size(), 6u);
  EXPECT_EQ(jamming_table(sweep_jamming(reference_link(), dbw_grid(-30.0, 10.0, 10.0), 4000, 1), 1).str(),
            t.str());
}

TEST(BidSweep, BaseAllocation) {
  const auto pts = sweep_bids(reference_bid_table(), {0.0, 0.1}, 0.05, 1);
  EXPECT_NEAR(pts[0].det_allocation(4, 2), 1.0, 1e-9);
  EXPECT_NEAR(pts[0].rmca_allocation(4, 2), 1.0, 1e-9);
  EXPECT_GT(pts[1].det_allocation(4, 0), 0.0);
  EXPECT_EQ(bids_table(pts, 1).rows().size(), 2u * 2u * 15u);
}

TEST(UncertaintySweep, SmallMarket) {
  GeneratorConfig gen;
  gen.nodes = 3;
  gen.channels = 2;
  gen.metric_samples = 200;
  const MarketScenario sc = generate_scenario(gen, 4);
  UncertaintySweepConfig cfg;
  cfg.metrics.rate_samples = 200;
  cfg.metrics.warden.samples = 128;
  cfg.metrics.warden.pso.particles = 6;
  cfg.metrics.warden.pso.iterations = 6;
  cfg.trials = 2;
  const auto pts = sweep_uncertainty(sc, {0.0, 10.0, 30.0}, cfg);
  EXPECT_NEAR(pts[0].robust_welfare, pts[0].deterministic_welfare, 1e-6);
  for (std::size_t k = 1; k < pts.size(); ++k) {
    EXPECT_LE(pts[k].robust_welfare, pts[k - 1].robust_welfare + 1e-9);
    EXPECT_EQ(pts[k].deterministic_welfare, pts[0].deterministic_welfare);
    EXPECT_GE(pts[k].mean_interval, pts[k - 1].mean_interval);
  }
  EXPECT_THROW(sweep_uncertainty(sc, {10.0, 0.0}, cfg), std::invalid_argument);
}

TEST(IrExperiment, InsideAndOutside) {
  IrConfig cfg;
  cfg.trials = 4;
  cfg.metrics.warden.samples = 128;
  const IrReport in = experiment_ir_violation(cfg, true, 3);
  EXPECT_EQ(in.rows.size(), 4u * 5u);
  EXPECT_GE(in.min_rmca_true(), -1e-6);
  for (const auto& r : in.rows) {
    EXPECT_FALSE(r.rmca_rejected);
    EXPECT_NEAR(r.rmca_true, r.rmca_expected, 1e-9);
  }
  const IrReport out = experiment_ir_violation(cfg, false, 3);
  EXPECT_EQ(ir_table(out).rows().size(), out.rows.size());
}

TEST(Timing, RecordsBothMechanisms) {
  TimingConfig cfg;
  cfg.metrics.warden.samples = 64;
  cfg.metrics.warden.pso.particles = 4;
  cfg.metrics.warden.pso.iterations = 4;
  const auto pts = bench_timing({2}, {2, 3}, 1, 1, cfg);
  ASSERT_EQ(pts.size(), 2u);
  for (const auto& p : pts) {
    EXPECT_GT(p.det_seconds, 0.0);
    EXPECT_GT(p.rmca_auction_seconds, 0.0);
    EXPECT_GT(p.rmca_set_seconds, 0.0);
  }
  EXPECT_EQ(timing_table(pts, 1).header().size(), 8u);
}

TEST(RandomMarket, ShapesAndRanges) {
  Rng rng(5);
  const RandomMarket mk = random_market(4, 3, rng);
  EXPECT_EQ(mk.set.nodes(), 4u);
  EXPECT_EQ(mk.budgets.size(), 4u);
  EXPECT_EQ(mk.costs.size(), 3u);
  for (double c : mk.costs) EXPECT_GE(c, 0.0);
  EXPECT_NO_THROW(mk.set.validate());
}
