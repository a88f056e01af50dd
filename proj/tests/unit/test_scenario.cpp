#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "jrc/scenario.hpp"
#include "json.hpp"

using namespace jrc;

namespace {

GeneratorConfig small(std::size_t n = 3, std::size_t m = 2) {
  GeneratorConfig cfg;
  cfg.nodes = n;
  cfg.channels = m;
  cfg.metric_samples = 50;
  return cfg;
}

std::string tmp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST(Generator, SameSeedSameScenario) {
  const auto a = generate_scenario(GeneratorConfig{}, 7);
  const auto b = generate_scenario(GeneratorConfig{}, 7);
  EXPECT_EQ(a, b);
  EXPECT_EQ(scenario_hash(a), scenario_hash(b));
  EXPECT_EQ(a.num_nodes(), 20u);
  EXPECT_EQ(a.num_channels(), 10u);
  for (double b : a.budgets()) {
    EXPECT_GE(b, 1.5);
    EXPECT_LE(b, 5.0);
  }
  EXPECT_NE(scenario_hash(a), scenario_hash(generate_scenario(GeneratorConfig{}, 8)));
}

TEST(Generator, CostsNeverNegative) {
  GeneratorConfig cfg = small(1, 5);
  cfg.metric_samples = 1;
  for (std::uint64_t s = 0; s < 2000; ++s)
    for (double c : generate_scenario(cfg, s).costs()) ASSERT_GE(c, 0.0);
}

TEST(Generator, GeometryInsideArea) {
  const auto sc = generate_scenario(small(10, 2), 3);
  for (const auto& n : sc.nodes) {
    for (const auto& p : {n.position, n.jammer, n.receiver, n.warden}) {
      EXPECT_GE(p.x, 0.0);
      EXPECT_LE(p.x, 200.0);
      EXPECT_GE(p.y, 0.0);
      EXPECT_LE(p.y, 200.0);
    }
    EXPECT_LE(n.receiver.z, 20.0);
    EXPECT_LE(n.warden.z, 5.0);
  }
}

TEST(Generator, RejectsBadBounds) {
  GeneratorConfig cfg = small();
  cfg.nodes = 0;
  EXPECT_THROW(generate_scenario(cfg, 1), std::invalid_argument);
  cfg = small();
  cfg.budget_min = 6.0;
  EXPECT_THROW(generate_scenario(cfg, 1), std::invalid_argument);
}

TEST(Store, RoundTripIsExact) {
  auto sc = generate_scenario(small(), 11);
  sc.bids = Matrix::from_rows({{0.1, 1.0 / 3.0}, {2.5, 1e-17}, {7.0, 0.0}});
  sc.warden_half_width = Position3D{5.0, 5.0, 0.0};
  const std::string path = tmp_path("jrc_roundtrip.json");
  save_scenario(sc, path);
  const auto back = load_scenario(path);
  EXPECT_EQ(back, sc);
  EXPECT_EQ(scenario_hash(back), scenario_hash(sc));
}

TEST(Store, SystemDefaultsAreWritten) {
  const std::string text = scenario_to_json(generate_scenario(small(), 1));
  for (const char* needle : {"\"carrier_frequency_hz\": 5900000000.0", "\"bandwidth_hz\": 50000000.0",
                             "\"max_transmit_power_dbm\": 10.0", "\"max_jamming_power_dbm\": 10.0",
                             "\"subcarriers\": 10", "\"time_bandwidth_product\": 100.0",
                             "\"duty_factor\": 0.01"})
    EXPECT_NE(text.find(needle), std::string::npos) << needle;
}

TEST(Store, MissingBudgetIsNamed) {
  auto doc = nlohmann::json::parse(scenario_to_json(generate_scenario(small(), 2)));
  doc["nodes"][1].erase("budget");
  try {
    scenario_from_json(doc.dump());
    FAIL() << "expected a parse error";
  } catch (const ScenarioError& e) {
    EXPECT_NE(std::string(e.what()).find("nodes[1].budget"), std::string::npos) << e.what();
  }
}

TEST(Store, BidShapeMismatchIsRejected) {
  auto sc = generate_scenario(small(), 3);
  sc.bids = Matrix(2, 2);
  EXPECT_THROW(sc.validate(), ScenarioError);
  EXPECT_THROW(scenario_from_json(scenario_to_json(sc)), ScenarioError);
}

TEST(Store, MalformedJsonIsAScenarioError) {
  EXPECT_THROW(scenario_from_json("{ not json"), ScenarioError);
  EXPECT_THROW(load_scenario(tmp_path("jrc_does_not_exist.json")), ScenarioError);
}

TEST(Units, PowerConversions) {
  EXPECT_NEAR(dbm_to_watts(10.0), 0.01, 1e-15);
  EXPECT_NEAR(dbw_to_watts(-20.0), 0.01, 1e-15);
  EXPECT_NEAR(watts_to_dbw(0.001), -30.0, 1e-12);
}

TEST(ReferenceData, BidTable) {
  const BidTable t = reference_bid_table();
  EXPECT_EQ(t.bids.rows(), 5u);
  EXPECT_EQ(t.bids.cols(), 3u);
  EXPECT_DOUBLE_EQ(t.bids(4, 2), 4.58);
  EXPECT_DOUBLE_EQ(t.bids(0, 2), 3.69);
}
