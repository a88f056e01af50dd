#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "jrc/csv.hpp"
#include "jrc/deterministic.hpp"
#include "jrc/experiments.hpp"
#include "jrc/rmca.hpp"
#include "jrc/scenario.hpp"
#include "jrc/valuation.hpp"

namespace {

using namespace jrc;

constexpr int kExitValidation = 2;
constexpr int kExitFailure = 1;

void emit(const CsvTable& table, const std::string& out) {
  if (out.empty() || out == "-") {
    table.write(std::cout);
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  table.write(f);
}

void provenance(const std::string& command, std::uint64_t seed, const std::string& hash = "") {
  std::cerr << "command=" << command << " seed=" << seed;
  if (!hash.empty()) std::cerr << " scenario_hash=" << hash;
  std::cerr << '\n';
}

Position3D parse_position(const std::vector<double>& v, const char* what) {
  if (v.size() != 3) throw std::invalid_argument(std::string(what) + " needs three values x,y,z");
  return {v[0], v[1], v[2]};
}

std::vector<double> range_values(double from, double to, double step) {
  if (!(step > 0.0) || to < from) throw std::invalid_argument("bad range");
  std::vector<double> out;
  for (std::size_t k = 0;; ++k) {
    const double x = from + step * static_cast<double>(k);
    if (x > to + 1e-9 * step) break;
    out.push_back(x);
  }
  return out;
}

struct GenOptions {
  std::size_t nodes = 20;
  std::size_t channels = 10;
  std::size_t samples = 2000;
  std::vector<double> half_width;
};

struct CommonOptions {
  std::uint64_t seed = 1;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  cmd->add_option("--out,-o", o.out, "Output path (stdout when omitted)");
}

MarketScenario scenario_from(const std::string& path, const GenOptions& gen, std::uint64_t seed) {
  if (!path.empty()) return load_scenario(path);
  GeneratorConfig cfg;
  cfg.nodes = gen.nodes;
  cfg.channels = gen.channels;
  cfg.metric_samples = gen.samples;
  MarketScenario sc = generate_scenario(cfg, seed);
  if (!gen.half_width.empty()) sc.warden_half_width = parse_position(gen.half_width, "--half-width");
  return sc;
}

CsvTable outcome_table(const AuctionOutcome& o) {
  CsvTable t("auction-outcome", 1,
             {"mechanism", "node", "channel", "fractional", "winner", "charge", "payment", "welfare"});
  const std::size_t n = o.fractional.rows();
  const std::size_t m = o.fractional.cols();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const bool won = !o.rejected && o.rounding.winner[j] == static_cast<long>(i);
      t.row() << o.mechanism << static_cast<unsigned long long>(i)
              << static_cast<unsigned long long>(j) << o.fractional(i, j) << won
              << (won ? o.rounding.charge[j] : 0.0) << o.payments[i] << o.social_welfare;
    }
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covert channel auctions: scenarios, mechanisms and experiment sweeps"};
  app.require_subcommand(1);

  // gen-scenario
  CommonOptions gen_common;
  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-scenario", "Generate a market scenario file");
  add_common(gen_cmd, gen_common);
  gen_cmd->add_option("--nodes,-n", gen.nodes)->capture_default_str();
  gen_cmd->add_option("--channels,-m", gen.channels)->capture_default_str();
  gen_cmd->add_option("--samples", gen.samples, "Samples for the weight calibration")->capture_default_str();
  gen_cmd->add_option("--half-width", gen.half_width, "Warden box half width x,y,z")->delimiter(',');

  // sweep-jamming
  CommonOptions jam_common;
  double jam_from = -40.0, jam_to = 20.0, jam_step = 1.0;
  std::size_t jam_samples = 100000;
  auto* jam_cmd = app.add_subcommand("sweep-jamming", "dep, cc and mi against friendly jamming power");
  add_common(jam_cmd, jam_common);
  jam_cmd->add_option("--from", jam_from, "Lowest power in dBW")->capture_default_str();
  jam_cmd->add_option("--to", jam_to, "Highest power in dBW")->capture_default_str();
  jam_cmd->add_option("--step", jam_step, "Step in dB")->capture_default_str();
  jam_cmd->add_option("--samples", jam_samples, "Monte-Carlo samples per point")->capture_default_str();

  // sweep-uncertainty
  CommonOptions unc_common;
  GenOptions unc_gen;
  std::string unc_scenario;
  std::vector<double> unc_widths{0.0, 5.0, 10.0, 20.0, 40.0};
  std::size_t unc_trials = 10;
  std::size_t unc_dep_samples = 256;
  auto* unc_cmd = app.add_subcommand("sweep-uncertainty", "Welfare against warden-box width");
  add_common(unc_cmd, unc_common);
  unc_cmd->add_option("--scenario", unc_scenario, "Scenario file (generated when omitted)");
  unc_cmd->add_option("--nodes,-n", unc_gen.nodes)->capture_default_str();
  unc_cmd->add_option("--channels,-m", unc_gen.channels)->capture_default_str();
  unc_cmd->add_option("--widths", unc_widths, "Ascending box side lengths in metres")->delimiter(',');
  unc_cmd->add_option("--trials", unc_trials, "Realized-bid draws per width")->capture_default_str();
  unc_cmd->add_option("--samples", unc_dep_samples, "Fading draws per DEP evaluation")->capture_default_str();

  // ir-violation
  CommonOptions ir_common;
  std::size_t ir_trials = 100;
  std::string ir_case = "inside";
  auto* ir_cmd = app.add_subcommand("ir-violation", "True utilities after the warden moves");
  add_common(ir_cmd, ir_common);
  ir_cmd->add_option("--trials", ir_trials)->capture_default_str();
  ir_cmd->add_option("--case", ir_case)->check(CLI::IsMember({"inside", "outside"}))->capture_default_str();

  // sweep-bids
  CommonOptions bid_common;
  double bid_to = 1.0, bid_step = 0.05, bid_radius = 0.05;
  auto* bid_cmd = app.add_subcommand("sweep-bids", "Allocation probabilities as one node raises its bids");
  add_common(bid_cmd, bid_common);
  bid_cmd->add_option("--max-increment", bid_to)->capture_default_str();
  bid_cmd->add_option("--step", bid_step)->capture_default_str();
  bid_cmd->add_option("--radius", bid_radius, "Interval radius for the robust mechanism")->capture_default_str();

  // bench-timing
  CommonOptions time_common;
  std::vector<std::size_t> time_nodes{5, 10, 20};
  std::vector<std::size_t> time_channels{3, 5, 10};
  std::size_t time_reps = 1;
  auto* time_cmd = app.add_subcommand("bench-timing", "Wall-clock time of both mechanisms");
  add_common(time_cmd, time_common);
  time_cmd->add_option("--nodes", time_nodes)->delimiter(',');
  time_cmd->add_option("--channels", time_channels)->delimiter(',');
  time_cmd->add_option("--reps", time_reps)->capture_default_str();

  // auction run
  auto* auction_cmd = app.add_subcommand("auction", "Run a mechanism on a scenario");
  auction_cmd->require_subcommand(1);
  CommonOptions run_common;
  std::string run_scenario;
  std::string run_mechanism;
  std::size_t run_samples = 2000;
  std::vector<double> run_half_width;
  auto* run_cmd = auction_cmd->add_subcommand("run", "One auction round");
  add_common(run_cmd, run_common);
  run_cmd->add_option("--scenario", run_scenario, "Scenario file")->required();
  run_cmd->add_option("--mechanism", run_mechanism)
      ->required()
      ->check(CLI::IsMember({"rmca", "deterministic"}));
  run_cmd->add_option("--samples", run_samples, "Samples per covert-rate estimate")->capture_default_str();
  run_cmd->add_option("--half-width", run_half_width, "Warden box half width x,y,z")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) {
      const MarketScenario sc = scenario_from("", gen, gen_common.seed);
      const std::string text = scenario_to_json(sc);
      if (gen_common.out.empty() || gen_common.out == "-") {
        std::cout << text << '\n';
      } else {
        save_scenario(sc, gen_common.out);
      }
      provenance("gen-scenario", gen_common.seed, scenario_hash(sc));
    } else if (*jam_cmd) {
      const auto points = sweep_jamming(reference_link(), dbw_grid(jam_from, jam_to, jam_step),
                                        jam_samples, jam_common.seed);
      emit(jamming_table(points, jam_common.seed), jam_common.out);
      provenance("sweep-jamming", jam_common.seed);
    } else if (*unc_cmd) {
      const MarketScenario sc = scenario_from(unc_scenario, unc_gen, unc_common.seed);
      UncertaintySweepConfig cfg;
      cfg.trials = unc_trials;
      cfg.metrics.warden.samples = unc_dep_samples;
      emit(uncertainty_table(sweep_uncertainty(sc, unc_widths, cfg), sc.seed), unc_common.out);
      provenance("sweep-uncertainty", sc.seed, scenario_hash(sc));
    } else if (*ir_cmd) {
      IrConfig cfg;
      cfg.trials = ir_trials;
      emit(ir_table(experiment_ir_violation(cfg, ir_case == "inside", ir_common.seed)), ir_common.out);
      provenance("ir-violation", ir_common.seed);
    } else if (*bid_cmd) {
      const auto points =
          sweep_bids(reference_bid_table(), range_values(0.0, bid_to, bid_step), bid_radius, bid_common.seed);
      emit(bids_table(points, bid_common.seed), bid_common.out);
      provenance("sweep-bids", bid_common.seed);
    } else if (*time_cmd) {
      emit(timing_table(bench_timing(time_nodes, time_channels, time_reps, time_common.seed),
                        time_common.seed),
           time_common.out);
      provenance("bench-timing", time_common.seed);
    } else if (*run_cmd) {
      const MarketScenario sc = load_scenario(run_scenario);
      MetricsConfig metrics_cfg;
      metrics_cfg.rate_samples = run_samples;
      const MarketMetrics metrics = compute_market_metrics(sc, metrics_cfg);
      const Matrix bids = sc.bids ? *sc.bids : metrics.nominal;
      const std::vector<double> costs = sc.costs();
      const std::vector<double> budgets = sc.budgets();
      Rng rng = make_rng(run_common.seed, {0x52554eULL});
      AuctionOutcome outcome;
      if (run_mechanism == "deterministic") {
        outcome = det_run(bids, budgets, costs, rng);
      } else {
        std::optional<Position3D> half = sc.warden_half_width;
        if (!run_half_width.empty()) half = parse_position(run_half_width, "--half-width");
        if (!half) throw std::invalid_argument("rmca needs a warden box: pass --half-width or store one in the scenario");
        const WardenBoxResult box = market_uncertainty(sc, metrics, *half, metrics_cfg.warden);
        const UncertaintySet set = box.set;
        const RmcaPhaseAOutput phase_a = rmca_phase_a(set, budgets, costs);
        outcome = rmca_phase_b(bids, phase_a, set, budgets, costs, rng);
        if (outcome.rejected) std::cerr << "bids rejected: outside the uncertainty set\n";
      }
      emit(outcome_table(outcome), run_common.out);
      provenance("auction run --mechanism " + run_mechanism, run_common.seed, scenario_hash(sc));
    }
  } catch (const ScenarioError& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return 0;
}
