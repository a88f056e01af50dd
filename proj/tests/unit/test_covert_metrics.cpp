#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "jrc/covert_metrics.hpp"
#include "jrc/scenario.hpp"

using namespace jrc;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Node at the origin, receiver 10 m up, warden 5 m away, jammer 8 m away.
CovertLinkScenario simple_link(double jam_w) {
  CovertLinkScenario s;
  s.node_pos = {0, 0, 0};
  s.receiver_pos = {0, 0, 10};
  s.warden_pos = {5, 0, 0};
  s.jammer_pos = {5, 8, 0};
  s.noise_comm_w = 1e-4;
  s.noise_radar_w = 2e-4;
  s.subcarriers = 1;
  s.subcarrier_spacing_hz = 5e6;
  s.transmit_power_w = {1e-3};
  s.jamming_power_w = jam_w;
  s.pulse_duration_s = 2e-6;
  s.duty_factor = 0.01;
  return s;
}

}  // namespace

TEST(FaMd, ThresholdAtNoiseFloorGivesUnitDep) {
  Rng rng(1);
  const auto e = estimate_fa_md(simple_link(0.01), 0, 1e-4, 1000, rng);
  EXPECT_EQ(e.p_fa, 1.0);
  EXPECT_EQ(e.p_md, 0.0);
  EXPECT_EQ(e.dep, 1.0);
}

TEST(FaMd, HugeThresholdMissesEverything) {
  Rng rng(2);
  const auto e = estimate_fa_md(simple_link(0.01), 0, 1e3, 1000, rng);
  EXPECT_EQ(e.p_fa, 0.0);
  EXPECT_EQ(e.p_md, 1.0);
}

TEST(FaMd, MatchesRayleighClosedForm) {
  // With Rayleigh power gains, idle energy is sigma^2 + J Y and active energy
  // adds S X (X, Y unit exponentials): P_FA = exp(-t/J) and P_MD is the
  // hypoexponential CDF at t = eps - sigma^2.
  const CovertLinkScenario s = simple_link(0.01);
  const double sig = 1e-3 / 25.0;
  const double jam = 0.01 / 64.0;
  const double t = 4e-4;
  const double p_fa = std::exp(-t / jam);
  const double p_md = 1.0 - (sig * std::exp(-t / sig) - jam * std::exp(-t / jam)) / (sig - jam);
  Rng rng(3);
  const auto e = estimate_fa_md(s, 0, s.noise_comm_w + t, 10000, rng);
  EXPECT_NEAR(e.p_fa, p_fa, 4.0 * std::sqrt(p_fa * (1 - p_fa) / 1e4) + 1e-12);
  EXPECT_NEAR(e.p_md, p_md, 4.0 * std::sqrt(p_md * (1 - p_md) / 1e4));
  EXPECT_NEAR(e.dep, p_fa + p_md, 4.0 * e.std_error);
}

TEST(WardenThreshold, NoJammingMeansEasyDetection) {
  CovertLinkScenario s = simple_link(0.0);
  Rng rng(4);
  EXPECT_LT(warden_optimal_threshold(s, 0, {}, 4000, rng).dep, 0.05);
}

TEST(WardenThreshold, StrongJammingMeansNearBlindWarden) {
  CovertLinkScenario s = simple_link(10.0);
  Rng rng(5);
  EXPECT_GT(warden_optimal_threshold(s, 0, {}, 4000, rng).dep, 0.95);
}

TEST(WardenThreshold, OptimalBeatsAnyFixedThreshold) {
  CovertLinkScenario s = simple_link(0.01);
  const WardenDepModel model(s, 2000, 9);
  const SubcarrierDetector d = model.detector(0, s.warden_pos);
  const DepEstimate best = d.optimal({});
  for (double eps : {1.2e-4, 2e-4, 4e-4, 1e-3, 3e-3})
    EXPECT_LE(best.dep, d.at_threshold(eps).dep + 1e-12);
}

TEST(ChannelDep, SingleSubcarrierEqualsWardenOptimum) {
  CovertLinkScenario s = simple_link(0.01);
  const WardenDepModel model(s, 3000, 11);
  EXPECT_DOUBLE_EQ(model.channel_dep(s.warden_pos), model.subcarrier_dep(0, s.warden_pos).dep);
}

TEST(ChannelDep, MinimumOverHeterogeneousSubcarriers) {
  CovertLinkScenario s = simple_link(0.01);
  s.subcarriers = 3;
  s.transmit_power_w = {1e-3, 5e-3, 2e-4};
  const WardenDepModel model(s, 3000, 12);
  const double dep = model.channel_dep(s.warden_pos);
  for (std::size_t m = 0; m < 3; ++m) EXPECT_LE(dep, model.subcarrier_dep(m, s.warden_pos).dep);
}

TEST(ChannelDep, IdenticalSubcarriersAgreeWithinNoise) {
  CovertLinkScenario s = simple_link(0.01);
  s.subcarriers = 4;
  const WardenDepModel model(s, 4000, 13);
  const auto one = model.subcarrier_dep(0, s.warden_pos);
  EXPECT_NEAR(model.channel_dep(s.warden_pos), one.dep, 6.0 * one.std_error + 0.02);
}

TEST(ChannelDep, SameSeedSameAnswer) {
  CovertLinkScenario s = simple_link(0.01);
  Rng a(21), b(21);
  EXPECT_EQ(channel_dep(s, 500, a), channel_dep(s, 500, b));
}

TEST(CovertCc, DeterministicChannelIsShannon) {
  CovertLinkScenario s = simple_link(0.0);
  s.fading.comm_signal = {AlphaMuParams{2.0, kInf, 1.0}};
  Rng rng(6);
  const double expected = 5e6 * std::log2(1.0 + 1e-3 / 100.0 / 1e-4);
  EXPECT_NEAR(covert_cc(s, 10, rng).value, expected, 1e-6 * expected);
}

TEST(CovertCc, ZeroPowerGivesZero) {
  CovertLinkScenario s = simple_link(0.01);
  s.transmit_power_w = {0.0};
  Rng rng(7);
  EXPECT_EQ(covert_cc(s, 100, rng).value, 0.0);
  EXPECT_EQ(covert_mi(s, 100, rng).value, 0.0);
}

TEST(CovertMi, DeterministicSpectraClosedForm) {
  CovertLinkScenario s = simple_link(0.0);
  s.fading.radar_signal = {AlphaMuParams{2.0, kInf, 1.0}};
  Rng rng(8);
  const double pri = s.pri_s();
  const double expected = 5e6 * pri / 2.0 * std::log2(1.0 + pri * 1e-3 / 100.0 / 2e-4);
  EXPECT_NEAR(covert_mi(s, 10, rng).value, expected, 1e-9 * expected);
}

TEST(CovertRates, FallWithJammingUnderCommonDraws) {
  double prev_cc = kInf, prev_mi = kInf;
  for (double j : {0.0, 1e-3, 1e-2, 1e-1}) {
    Rng a(30), b(31);
    const double cc = covert_cc(simple_link(j), 2000, a).value;
    const double mi = covert_mi(simple_link(j), 2000, b).value;
    EXPECT_LE(cc, prev_cc);
    EXPECT_LE(mi, prev_mi);
    prev_cc = cc;
    prev_mi = mi;
  }
}

TEST(Valuation, Arithmetic) {
  EXPECT_DOUBLE_EQ(valuation(true, 0.0, 1.0, 0.0, 4.0, 0.95), 3.8);
  EXPECT_EQ(valuation(false, 1.0, 1.0, 2.0, 4.0, 0.95), 0.0);
  EXPECT_EQ(valuation(true, 1.0, 1.0, 2.0, 4.0, 0.0), 0.0);
  EXPECT_THROW(valuation(true, -1.0, 1.0, 2.0, 4.0, 0.5), std::invalid_argument);
  EXPECT_THROW(valuation(true, 1.0, 1.0, 2.0, 4.0, 1.5), std::invalid_argument);
}

TEST(ReferenceLink, WardenGeometry) {
  const CovertLinkScenario s = reference_link();
  EXPECT_NEAR(path_gain(s.node_pos, s.warden_pos, 2.0), 1.0 / 52.0, 1e-15);
}
