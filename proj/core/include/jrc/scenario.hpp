#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jrc/covert_metrics.hpp"
#include "jrc/matrix.hpp"

namespace jrc {

/// Raised for malformed or inconsistent scenario files; the message names
/// the offending field path, e.g. "nodes[3].budget".
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double dbm_to_watts(double dbm);
double dbw_to_watts(double dbw);
double watts_to_dbw(double w);

/// Radio system defaults shared by every link.
struct SystemParams {
  double carrier_frequency_hz = 5.9e9;
  double bandwidth_hz = 50e6;
  double max_transmit_power_dbm = 10.0;
  double max_jamming_power_dbm = 10.0;
  std::size_t subcarriers = 10;
  double time_bandwidth_product = 100.0;
  double duty_factor = 0.01;
  double path_loss_exponent = 2.0;
  double noise_comm_w = 1.3e-4;
  double noise_radar_w = 1.2e-4;

  double subcarrier_spacing_hz() const { return bandwidth_hz / static_cast<double>(subcarriers); }
  double pulse_duration_s() const { return time_bandwidth_product / bandwidth_hz; }
  /// Maximum transmit power split evenly over the sub-carriers.
  double transmit_power_per_subcarrier_w() const {
    return dbm_to_watts(max_transmit_power_dbm) / static_cast<double>(subcarriers);
  }

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

struct ChannelSpec {
  double kappa1 = 0.0;           // cost per watt of friendly jamming
  double kappa2 = 0.0;           // fixed cost
  double jamming_power_w = 0.0;  // p_FJ

  double cost() const { return kappa1 * jamming_power_w + kappa2; }
  friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;
};

struct NodeSpec {
  Position3D position;
  Position3D jammer;
  Position3D receiver;
  Position3D warden;
  double eta_mi = 0.0;
  double eta_cc = 0.0;
  double budget = 0.0;

  friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

/// Complete auction market: N nodes, M channels and one covert link per
/// (node, channel). Link positions mirror the node geometry and link
/// jamming powers mirror the channel.
struct MarketScenario {
  std::uint64_t seed = 0;
  SystemParams system;
  std::vector<ChannelSpec> channels;
  std::vector<NodeSpec> nodes;
  std::vector<std::vector<int>> indicator;
  Grid<CovertLinkScenario> links;
  std::optional<Matrix> bids;
  std::optional<Position3D> warden_half_width;

  std::size_t num_nodes() const { return nodes.size(); }
  std::size_t num_channels() const { return channels.size(); }
  std::vector<double> costs() const;
  std::vector<double> budgets() const;
  /// Throws ScenarioError naming the first inconsistent field.
  void validate() const;

  friend bool operator==(const MarketScenario&, const MarketScenario&) = default;
};

struct GeneratorConfig {
  std::size_t nodes = 20;
  std::size_t channels = 10;
  double area_m = 200.0;
  double receiver_height_max_m = 20.0;
  double warden_height_max_m = 5.0;
  double cost_mean = 2.0;
  double cost_variance = 1.0;
  double budget_min = 1.5;
  double budget_max = 5.0;
  double jamming_fraction_min = 0.5;  // of the maximum jamming power
  double comm_mu_min = 1.0;
  double comm_mu_max = 3.0;
  double comm_mean_min = 0.5;
  double comm_mean_max = 1.5;
  double value_scale_min = 3.0;  // target money scale of a node's valuations
  double value_scale_max = 6.0;
  std::size_t metric_samples = 2000;
  SystemParams system;

  void validate() const;
};

/// Pure function of (config, seed).
MarketScenario generate_scenario(const GeneratorConfig& config, std::uint64_t seed);

/// Builds the link for node i on channel j from node geometry and system defaults.
CovertLinkScenario make_link(const SystemParams& system, const NodeSpec& node,
                             const ChannelSpec& channel, const LinkFading& fading);

std::string scenario_to_json(const MarketScenario& scenario);
MarketScenario scenario_from_json(const std::string& text);
void save_scenario(const MarketScenario& scenario, const std::filesystem::path& path);
MarketScenario load_scenario(const std::filesystem::path& path);
/// FNV-1a 64 of the canonical JSON rendering, as 16 hex digits.
std::string scenario_hash(const MarketScenario& scenario);

// ---------------------------------------------------------------------------
// Reference data sets

/// Single link with the fixed positions of the jamming-power study:
/// receiver [7,10,19], node [3,8,0], jammer [6,21,0], warden [3,14,4];
/// Rayleigh fading on every link.
CovertLinkScenario reference_link(const SystemParams& system = {}, double jamming_power_w = 0.0);

struct BidTable {
  Matrix bids;
  std::vector<double> budgets;
  std::vector<double> costs;
  std::size_t varied_node = 4;
};

/// 5 x 3 submitted-bid matrix of the bid-increment study with budgets under
/// which the varied node's budget binds once its bids rise.
BidTable reference_bid_table();

}  // namespace jrc
