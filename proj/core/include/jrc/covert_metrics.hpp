#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "jrc/channel_model.hpp"
#include "jrc/random.hpp"

namespace jrc {

struct PathLossExponents {
  double node_warden = 2.0;      // alpha_iw
  double jammer_warden = 2.0;    // alpha_gw
  double receiver_node = 2.0;    // alpha_bi
  double jammer_node = 2.0;      // alpha_gi

  friend bool operator==(const PathLossExponents&, const PathLossExponents&) = default;
};

/// Fading of every link touching one (node, channel) pair. Each vector holds
/// either one entry, shared by all sub-carriers, or one entry per sub-carrier.
struct LinkFading {
  std::vector<AlphaMuParams> warden_signal{AlphaMuParams{}};   // h_wm^2
  std::vector<AlphaMuParams> warden_jamming{AlphaMuParams{}};  // h_wg^2
  std::vector<AlphaMuParams> comm_signal{AlphaMuParams{}};     // |h_m|^2
  std::vector<AlphaMuParams> comm_jamming{AlphaMuParams{}};    // |h_g|^2
  std::vector<AlphaMuParams> radar_signal{AlphaMuParams{}};    // |G(f_m)|^2
  std::vector<AlphaMuParams> radar_jamming{AlphaMuParams{}};   // |J(f_m)|^2

  friend bool operator==(const LinkFading&, const LinkFading&) = default;
};

/// Everything needed to evaluate the covert metrics of one
/// (JRC node, channel, jammer, warden, receiver) tuple.
struct CovertLinkScenario {
  Position3D node_pos;
  Position3D jammer_pos;
  Position3D receiver_pos;
  Position3D warden_pos;
  PathLossExponents path_loss;
  LinkFading fading;
  double noise_comm_w = 1e-4;         // sigma_c^2
  double noise_radar_w = 1e-4;        // sigma_r^2
  std::size_t subcarriers = 1;        // M_c
  double subcarrier_spacing_hz = 1.0; // delta f
  std::vector<double> transmit_power_w{1.0};  // p_m^(T), one entry or one per sub-carrier
  double jamming_power_w = 0.0;       // p_g^(J)
  double pulse_duration_s = 1e-6;     // T_pulse
  double duty_factor = 0.01;          // delta

  double pri_s() const { return pulse_duration_s / duty_factor; }
  double transmit_power(std::size_t m) const;
  static const AlphaMuParams& pick(const std::vector<AlphaMuParams>& v, std::size_t m);

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;

  friend bool operator==(const CovertLinkScenario&, const CovertLinkScenario&) = default;
};

struct DepEstimate {
  double p_fa = 0.0;
  double p_md = 0.0;
  double dep = 0.0;
  double threshold = 0.0;
  double std_error = 0.0;
};

struct ThresholdSearchConfig {
  std::size_t grid_points = 64;
  double relative_tolerance = 1e-3;
  /// Upper end of the search: this quantile of the received power under H1.
  double upper_quantile = 0.999;
  /// Lowest grid offset above the noise floor, relative to the upper offset.
  double lower_span = 1e-9;
};

/// Monte-Carlo estimate with its standard error.
struct McValue {
  double value = 0.0;
  double std_error = 0.0;
};

/// Received-energy statistics at one warden for one sub-carrier, built from
/// a fixed set of fading draws so any threshold can be evaluated exactly
/// against the same samples.
class SubcarrierDetector {
 public:
  SubcarrierDetector(std::vector<double> jamming_power_sorted, std::vector<double> signal_power,
                     double noise, double signal_gain, double jamming_gain);

  DepEstimate at_threshold(double threshold) const;
  /// Log-grid plus golden-section minimisation of P_FA + P_MD over thresholds.
  DepEstimate optimal(const ThresholdSearchConfig& config) const;

  double noise() const { return noise_; }
  /// Search interval (noise + lower offset, noise + upper offset].
  std::pair<double, double> search_bounds(const ThresholdSearchConfig& config) const;
  std::size_t samples() const { return idle_.size(); }

 private:
  std::vector<double> idle_;    // sigma^2 + C2w h_wg^2, ascending
  std::vector<double> active_;  // idle + C1w h_wm^2, ascending
  double noise_;
};

/// Warden detection model for one link with common random numbers: the
/// standardised fading draws are fixed at construction so the detection
/// error probability becomes a deterministic function of warden position.
class WardenDepModel {
 public:
  WardenDepModel(const CovertLinkScenario& scenario, std::size_t samples, std::uint64_t seed,
                 ThresholdSearchConfig config = {});

  /// Warden-optimal detection error probability of one sub-carrier.
  DepEstimate subcarrier_dep(std::size_t m, const Position3D& warden) const;
  /// Minimum over sub-carriers, clamped to [0, 1].
  double channel_dep(const Position3D& warden) const;
  SubcarrierDetector detector(std::size_t m, const Position3D& warden) const;

  const CovertLinkScenario& scenario() const { return scenario_; }
  std::size_t samples() const { return samples_; }

 private:
  struct Draws {
    std::vector<double> jamming;  // h_wg^2, ascending
    std::vector<double> signal;   // h_wm^2, paired with jamming
  };
  CovertLinkScenario scenario_;
  std::size_t samples_;
  ThresholdSearchConfig config_;
  std::vector<Draws> draws_;
};

DepEstimate estimate_fa_md(const CovertLinkScenario& scenario, std::size_t subcarrier,
                           double threshold, std::size_t samples, Rng& rng);

DepEstimate warden_optimal_threshold(const CovertLinkScenario& scenario, std::size_t subcarrier,
                                     const ThresholdSearchConfig& config, std::size_t samples,
                                     Rng& rng);

double channel_dep(const CovertLinkScenario& scenario, std::size_t samples, Rng& rng,
                   const ThresholdSearchConfig& config = {});

/// Ergodic covert channel capacity in bit/s.
McValue covert_cc(const CovertLinkScenario& scenario, std::size_t samples, Rng& rng);

/// Covert radar mutual information in bits.
McValue covert_mi(const CovertLinkScenario& scenario, std::size_t samples, Rng& rng);

/// Bid valuation indicator * (eta_mi * mi + eta_cc * cc) * dep.
double valuation(bool indicator, double eta_mi, double eta_cc, double mi, double cc, double dep);

}  // namespace jrc
