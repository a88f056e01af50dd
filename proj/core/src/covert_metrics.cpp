#include "jrc/covert_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace jrc {

namespace {

enum StreamTag : std::uint64_t { kWardenStream = 0x57, kCommStream = 0x43, kRadarStream = 0x52 };

constexpr double kGoldenRatio = 0.6180339887498949;

void check_fading_vector(const std::vector<AlphaMuParams>& v, std::size_t subcarriers,
                         const char* name) {
  if (v.empty() || (v.size() != 1 && v.size() != subcarriers)) {
    throw std::invalid_argument(std::string("fading.") + name +
                                " must hold 1 or M_c entries, got " + std::to_string(v.size()));
  }
  for (const auto& p : v) p.validate();
}

struct WardenDraws {
  std::vector<double> jamming;
  std::vector<double> signal;
};

WardenDraws draw_warden(const CovertLinkScenario& s, std::size_t m, std::size_t samples,
                        std::uint64_t seed) {
  Rng rng = make_rng(seed, {kWardenStream, m});
  AlphaMuSampler jam(CovertLinkScenario::pick(s.fading.warden_jamming, m));
  AlphaMuSampler sig(CovertLinkScenario::pick(s.fading.warden_signal, m));
  std::vector<std::pair<double, double>> pairs(samples);
  for (auto& p : pairs) {
    p.first = jam(rng);
    p.second = sig(rng);
  }
  std::sort(pairs.begin(), pairs.end());
  WardenDraws d;
  d.jamming.reserve(samples);
  d.signal.reserve(samples);
  for (const auto& p : pairs) {
    d.jamming.push_back(p.first);
    d.signal.push_back(p.second);
  }
  return d;
}

SubcarrierDetector make_detector(const CovertLinkScenario& s, std::size_t m,
                                 const std::vector<double>& jamming,
                                 const std::vector<double>& signal, const Position3D& warden) {
  const double signal_gain =
      path_gain(s.node_pos, warden, s.path_loss.node_warden) * s.transmit_power(m);
  const double jamming_gain =
      path_gain(s.jammer_pos, warden, s.path_loss.jammer_warden) * s.jamming_power_w;
  return SubcarrierDetector(jamming, signal, s.noise_comm_w, signal_gain, jamming_gain);
}

McValue mean_and_stderr(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double var = x.size() > 1 ? ss / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

}  // namespace

// ---------------------------------------------------------------------------
// CovertLinkScenario

const AlphaMuParams& CovertLinkScenario::pick(const std::vector<AlphaMuParams>& v, std::size_t m) {
  return v.size() == 1 ? v.front() : v.at(m);
}

double CovertLinkScenario::transmit_power(std::size_t m) const {
  return transmit_power_w.size() == 1 ? transmit_power_w.front() : transmit_power_w.at(m);
}

void CovertLinkScenario::validate() const {
  if (subcarriers < 1) throw std::invalid_argument("subcarriers must be >= 1");
  if (!(subcarrier_spacing_hz > 0.0)) throw std::invalid_argument("subcarrier spacing must be > 0");
  if (!(noise_comm_w >= 0.0) || !(noise_radar_w >= 0.0))
    throw std::invalid_argument("noise powers must be >= 0");
  if (!(jamming_power_w >= 0.0)) throw std::invalid_argument("jamming power must be >= 0");
  if (!(pulse_duration_s > 0.0)) throw std::invalid_argument("pulse duration must be > 0");
  if (!(duty_factor > 0.0 && duty_factor <= 1.0))
    throw std::invalid_argument("duty factor must lie in (0, 1]");
  if (transmit_power_w.empty() ||
      (transmit_power_w.size() != 1 && transmit_power_w.size() != subcarriers))
    throw std::invalid_argument("transmit_power_w must hold 1 or M_c entries");
  for (double p : transmit_power_w)
    if (!(p >= 0.0)) throw std::invalid_argument("transmit powers must be >= 0");
  const PathLossExponents& pl = path_loss;
  for (double a : {pl.node_warden, pl.jammer_warden, pl.receiver_node, pl.jammer_node})
    if (!(a >= 0.0)) throw std::invalid_argument("path loss exponents must be >= 0");
  check_fading_vector(fading.warden_signal, subcarriers, "warden_signal");
  check_fading_vector(fading.warden_jamming, subcarriers, "warden_jamming");
  check_fading_vector(fading.comm_signal, subcarriers, "comm_signal");
  check_fading_vector(fading.comm_jamming, subcarriers, "comm_jamming");
  check_fading_vector(fading.radar_signal, subcarriers, "radar_signal");
  check_fading_vector(fading.radar_jamming, subcarriers, "radar_jamming");
}

// ---------------------------------------------------------------------------
// SubcarrierDetector

SubcarrierDetector::SubcarrierDetector(std::vector<double> jamming_power_sorted,
                                       std::vector<double> signal_power, double noise,
                                       double signal_gain, double jamming_gain)
    : idle_(std::move(jamming_power_sorted)), active_(std::move(signal_power)), noise_(noise) {
  if (idle_.size() != active_.size() || idle_.empty())
    throw std::invalid_argument("SubcarrierDetector: need equally sized, non-empty draws");
  for (std::size_t k = 0; k < idle_.size(); ++k) {
    idle_[k] = noise + jamming_gain * idle_[k];
    active_[k] = idle_[k] + signal_gain * active_[k];
  }
  std::sort(active_.begin(), active_.end());
}

DepEstimate SubcarrierDetector::at_threshold(double threshold) const {
  DepEstimate e;
  e.threshold = threshold;
  if (threshold <= noise_) {
    // The noise floor alone already reaches the threshold.
    e.p_fa = 1.0;
    e.p_md = 0.0;
    e.dep = 1.0;
    return e;
  }
  const double n = static_cast<double>(idle_.size());
  const auto above = idle_.end() - std::upper_bound(idle_.begin(), idle_.end(), threshold);
  const auto below = std::lower_bound(active_.begin(), active_.end(), threshold) - active_.begin();
  e.p_fa = static_cast<double>(above) / n;
  e.p_md = static_cast<double>(below) / n;
  e.dep = e.p_fa + e.p_md;
  e.std_error = std::sqrt((e.p_fa * (1.0 - e.p_fa) + e.p_md * (1.0 - e.p_md)) / n);
  return e;
}

std::pair<double, double> SubcarrierDetector::search_bounds(
    const ThresholdSearchConfig& config) const {
  const auto last = active_.size() - 1;
  const auto idx = static_cast<std::size_t>(std::floor(config.upper_quantile * static_cast<double>(last)));
  double upper_offset = active_[std::min(idx, last)] - noise_;
  if (!(upper_offset > 0.0)) {
    // No signal and no jamming energy: everything sits on the noise floor.
    upper_offset = std::max(noise_, 1e-300) * 1e-12;
  }
  return {upper_offset * config.lower_span, upper_offset};
}

DepEstimate SubcarrierDetector::optimal(const ThresholdSearchConfig& config) const {
  if (config.grid_points < 2) throw std::invalid_argument("threshold grid needs >= 2 points");
  const auto [lo, hi] = search_bounds(config);
  if (!(hi > lo)) throw std::invalid_argument("empty threshold search range");

  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);
  const double step = (log_hi - log_lo) / static_cast<double>(config.grid_points - 1);
  auto eval_log = [&](double log_offset) { return at_threshold(noise_ + std::exp(log_offset)); };

  DepEstimate best;
  best.dep = 3.0;
  std::size_t best_index = 0;
  for (std::size_t g = 0; g < config.grid_points; ++g) {
    const double lt = g + 1 == config.grid_points ? log_hi : log_lo + step * static_cast<double>(g);
    const DepEstimate e = eval_log(lt);
    if (e.dep < best.dep) {
      best = e;
      best_index = g;
    }
  }

  // Golden-section refinement inside the neighbouring grid cells.
  double a = log_lo + step * static_cast<double>(best_index == 0 ? 0 : best_index - 1);
  double b = std::min(log_hi, log_lo + step * static_cast<double>(best_index + 1));
  const double tol = std::log1p(config.relative_tolerance);
  double c = b - kGoldenRatio * (b - a);
  double d = a + kGoldenRatio * (b - a);
  DepEstimate fc = eval_log(c);
  DepEstimate fd = eval_log(d);
  while (b - a > tol) {
    if (fc.dep <= fd.dep) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGoldenRatio * (b - a);
      fc = eval_log(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGoldenRatio * (b - a);
      fd = eval_log(d);
    }
  }
  for (const DepEstimate& e : {fc, fd})
    if (e.dep < best.dep) best = e;
  return best;
}

// ---------------------------------------------------------------------------
// WardenDepModel

WardenDepModel::WardenDepModel(const CovertLinkScenario& scenario, std::size_t samples,
                               std::uint64_t seed, ThresholdSearchConfig config)
    : scenario_(scenario), samples_(samples), config_(config) {
  scenario_.validate();
  if (samples == 0) throw std::invalid_argument("WardenDepModel: samples must be >= 1");
  draws_.reserve(scenario_.subcarriers);
  for (std::size_t m = 0; m < scenario_.subcarriers; ++m) {
    WardenDraws d = draw_warden(scenario_, m, samples, seed);
    draws_.push_back({std::move(d.jamming), std::move(d.signal)});
  }
}

SubcarrierDetector WardenDepModel::detector(std::size_t m, const Position3D& warden) const {
  const Draws& d = draws_.at(m);
  return make_detector(scenario_, m, d.jamming, d.signal, warden);
}

DepEstimate WardenDepModel::subcarrier_dep(std::size_t m, const Position3D& warden) const {
  return detector(m, warden).optimal(config_);
}

double WardenDepModel::channel_dep(const Position3D& warden) const {
  double dep = 2.0;
  for (std::size_t m = 0; m < scenario_.subcarriers; ++m)
    dep = std::min(dep, subcarrier_dep(m, warden).dep);
  return std::clamp(dep, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Free functions

DepEstimate estimate_fa_md(const CovertLinkScenario& scenario, std::size_t subcarrier,
                           double threshold, std::size_t samples, Rng& rng) {
  if (samples == 0) throw std::invalid_argument("estimate_fa_md: samples must be >= 1");
  if (!(threshold > 0.0)) throw std::invalid_argument("estimate_fa_md: threshold must be > 0");
  scenario.validate();
  if (subcarrier >= scenario.subcarriers) throw std::out_of_range("sub-carrier index");
  const WardenDraws d = draw_warden(scenario, subcarrier, samples, split_seed(rng));
  return make_detector(scenario, subcarrier, d.jamming, d.signal, scenario.warden_pos)
      .at_threshold(threshold);
}

DepEstimate warden_optimal_threshold(const CovertLinkScenario& scenario, std::size_t subcarrier,
                                     const ThresholdSearchConfig& config, std::size_t samples,
                                     Rng& rng) {
  if (samples == 0) throw std::invalid_argument("warden_optimal_threshold: samples must be >= 1");
  scenario.validate();
  if (subcarrier >= scenario.subcarriers) throw std::out_of_range("sub-carrier index");
  const WardenDraws d = draw_warden(scenario, subcarrier, samples, split_seed(rng));
  return make_detector(scenario, subcarrier, d.jamming, d.signal, scenario.warden_pos)
      .optimal(config);
}

double channel_dep(const CovertLinkScenario& scenario, std::size_t samples, Rng& rng,
                   const ThresholdSearchConfig& config) {
  const WardenDepModel model(scenario, samples, split_seed(rng), config);
  return model.channel_dep(scenario.warden_pos);
}

McValue covert_cc(const CovertLinkScenario& s, std::size_t samples, Rng& rng) {
  s.validate();
  if (samples == 0) throw std::invalid_argument("covert_cc: samples must be >= 1");
  const std::uint64_t seed = split_seed(rng);
  const double signal_path = path_gain(s.receiver_pos, s.node_pos, s.path_loss.receiver_node);
  const double jamming_gain =
      path_gain(s.jammer_pos, s.node_pos, s.path_loss.jammer_node) * s.jamming_power_w;
  std::vector<double> total(samples, 0.0);
  for (std::size_t m = 0; m < s.subcarriers; ++m) {
    Rng r = make_rng(seed, {kCommStream, m});
    AlphaMuSampler h_sig(CovertLinkScenario::pick(s.fading.comm_signal, m));
    AlphaMuSampler h_jam(CovertLinkScenario::pick(s.fading.comm_jamming, m));
    const double signal_gain = signal_path * s.transmit_power(m);
    for (double& t : total) {
      const double hs = h_sig(r);
      const double hj = h_jam(r);
      t += s.subcarrier_spacing_hz *
           std::log2(1.0 + signal_gain * hs / (s.noise_comm_w + jamming_gain * hj));
    }
  }
  return mean_and_stderr(total);
}

McValue covert_mi(const CovertLinkScenario& s, std::size_t samples, Rng& rng) {
  s.validate();
  if (samples == 0) throw std::invalid_argument("covert_mi: samples must be >= 1");
  const std::uint64_t seed = split_seed(rng);
  const double pri = s.pri_s();
  const double signal_path = path_gain(s.receiver_pos, s.node_pos, s.path_loss.receiver_node);
  const double jamming_gain =
      path_gain(s.jammer_pos, s.node_pos, s.path_loss.jammer_node) * s.jamming_power_w;
  const double scale = s.subcarrier_spacing_hz * pri / 2.0;
  std::vector<double> total(samples, 0.0);
  for (std::size_t m = 0; m < s.subcarriers; ++m) {
    Rng r = make_rng(seed, {kRadarStream, m});
    AlphaMuSampler esd_sig(CovertLinkScenario::pick(s.fading.radar_signal, m));
    AlphaMuSampler esd_jam(CovertLinkScenario::pick(s.fading.radar_jamming, m));
    const double signal_gain = pri * signal_path * s.transmit_power(m);
    for (double& t : total) {
      const double g = esd_sig(r);
      const double j = esd_jam(r);
      t += scale * std::log2(1.0 + signal_gain * g / (s.noise_radar_w + jamming_gain * j));
    }
  }
  return mean_and_stderr(total);
}

double valuation(bool indicator, double eta_mi, double eta_cc, double mi, double cc, double dep) {
  if (eta_mi < 0.0 || eta_cc < 0.0) throw std::invalid_argument("valuation weights must be >= 0");
  if (!(dep >= 0.0 && dep <= 1.0)) throw std::invalid_argument("dep must lie in [0, 1]");
  if (mi < 0.0 || cc < 0.0) throw std::invalid_argument("mi and cc must be >= 0");
  if (!indicator) return 0.0;
  return (eta_mi * mi + eta_cc * cc) * dep;
}

}  // namespace jrc
