#include "jrc/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "jrc/hash.hpp"
#include "json.hpp"

namespace jrc {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr const char* kSchemaName = "jrc-market-scenario";

enum GeneratorStream : std::uint64_t {
  kGeometryStream = 1,
  kChannelStream,
  kNodeStream,
  kFadingStream,
  kMetricStream,
};

// ---- writing ---------------------------------------------------------------

json position_json(const Position3D& p) { return json::array({p.x, p.y, p.z}); }

json fading_json(const AlphaMuParams& p) {
  json j{{"alpha", p.alpha}, {"mean_power", p.mean_power}};
  if (std::isinf(p.mu)) j["mu"] = "inf";
  else j["mu"] = p.mu;
  return j;
}

json fading_list_json(const std::vector<AlphaMuParams>& v) {
  json arr = json::array();
  for (const auto& p : v) arr.push_back(fading_json(p));
  return arr;
}

json link_json(const CovertLinkScenario& s) {
  return json{
      {"path_loss",
       {{"node_warden", s.path_loss.node_warden},
        {"jammer_warden", s.path_loss.jammer_warden},
        {"receiver_node", s.path_loss.receiver_node},
        {"jammer_node", s.path_loss.jammer_node}}},
      {"fading",
       {{"warden_signal", fading_list_json(s.fading.warden_signal)},
        {"warden_jamming", fading_list_json(s.fading.warden_jamming)},
        {"comm_signal", fading_list_json(s.fading.comm_signal)},
        {"comm_jamming", fading_list_json(s.fading.comm_jamming)},
        {"radar_signal", fading_list_json(s.fading.radar_signal)},
        {"radar_jamming", fading_list_json(s.fading.radar_jamming)}}},
      {"noise_comm_w", s.noise_comm_w},
      {"noise_radar_w", s.noise_radar_w},
      {"subcarriers", s.subcarriers},
      {"subcarrier_spacing_hz", s.subcarrier_spacing_hz},
      {"transmit_power_w", s.transmit_power_w},
      {"pulse_duration_s", s.pulse_duration_s},
      {"duty_factor", s.duty_factor},
  };
}

json system_json(const SystemParams& s) {
  return json{{"carrier_frequency_hz", s.carrier_frequency_hz},
              {"bandwidth_hz", s.bandwidth_hz},
              {"max_transmit_power_dbm", s.max_transmit_power_dbm},
              {"max_jamming_power_dbm", s.max_jamming_power_dbm},
              {"subcarriers", s.subcarriers},
              {"time_bandwidth_product", s.time_bandwidth_product},
              {"duty_factor", s.duty_factor},
              {"path_loss_exponent", s.path_loss_exponent},
              {"noise_comm_w", s.noise_comm_w},
              {"noise_radar_w", s.noise_radar_w}};
}

json to_json_document(const MarketScenario& sc) {
  json doc;
  doc["schema"] = kSchemaName;
  doc["version"] = kSchemaVersion;
  doc["seed"] = sc.seed;
  doc["system"] = system_json(sc.system);
  json channels = json::array();
  for (const auto& c : sc.channels)
    channels.push_back({{"kappa1", c.kappa1}, {"kappa2", c.kappa2}, {"jamming_power_w", c.jamming_power_w}});
  doc["channels"] = channels;
  json nodes = json::array();
  for (const auto& n : sc.nodes)
    nodes.push_back({{"position", position_json(n.position)},
                     {"jammer", position_json(n.jammer)},
                     {"receiver", position_json(n.receiver)},
                     {"warden", position_json(n.warden)},
                     {"eta_mi", n.eta_mi},
                     {"eta_cc", n.eta_cc},
                     {"budget", n.budget}});
  doc["nodes"] = nodes;
  doc["indicator"] = sc.indicator;
  json links = json::array();
  for (std::size_t i = 0; i < sc.links.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < sc.links.cols(); ++j) row.push_back(link_json(sc.links(i, j)));
    links.push_back(row);
  }
  doc["links"] = links;
  if (sc.bids) {
    json rows = json::array();
    for (std::size_t i = 0; i < sc.bids->rows(); ++i) {
      const auto r = sc.bids->row(i);
      rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    doc["bids"] = rows;
  }
  if (sc.warden_half_width) doc["warden_half_width"] = position_json(*sc.warden_half_width);
  return doc;
}

// ---- reading ---------------------------------------------------------------

const json& field(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) throw ScenarioError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end())
    throw ScenarioError("missing field " + (path.empty() ? std::string(key) : path + "." + key));
  return *it;
}

std::string child(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

std::string index(const std::string& path, std::size_t k) {
  return path + "[" + std::to_string(k) + "]";
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ScenarioError(path + ": expected a number");
  return v.get<double>();
}

double number_field(const json& obj, const std::string& path, const char* key) {
  return number(field(obj, path, key), child(path, key));
}

std::size_t count_field(const json& obj, const std::string& path, const char* key) {
  const json& v = field(obj, path, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw ScenarioError(child(path, key) + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

const json& array_field(const json& obj, const std::string& path, const char* key) {
  const json& v = field(obj, path, key);
  if (!v.is_array()) throw ScenarioError(child(path, key) + ": expected an array");
  return v;
}

Position3D position(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) throw ScenarioError(path + ": expected [x, y, z]");
  return {number(v[0], index(path, 0)), number(v[1], index(path, 1)), number(v[2], index(path, 2))};
}

AlphaMuParams fading_params(const json& v, const std::string& path) {
  AlphaMuParams p;
  p.alpha = number_field(v, path, "alpha");
  p.mean_power = number_field(v, path, "mean_power");
  const json& mu = field(v, path, "mu");
  if (mu.is_string()) {
    if (mu.get<std::string>() != "inf") throw ScenarioError(child(path, "mu") + ": expected a number or \"inf\"");
    p.mu = std::numeric_limits<double>::infinity();
  } else {
    p.mu = number(mu, child(path, "mu"));
  }
  return p;
}

std::vector<AlphaMuParams> fading_list(const json& obj, const std::string& path, const char* key) {
  const json& arr = array_field(obj, path, key);
  std::vector<AlphaMuParams> out;
  for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(fading_params(arr[k], index(child(path, key), k)));
  return out;
}

std::vector<double> number_list(const json& obj, const std::string& path, const char* key) {
  const json& arr = array_field(obj, path, key);
  std::vector<double> out;
  for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(number(arr[k], index(child(path, key), k)));
  return out;
}

SystemParams parse_system(const json& v, const std::string& path) {
  SystemParams s;
  s.carrier_frequency_hz = number_field(v, path, "carrier_frequency_hz");
  s.bandwidth_hz = number_field(v, path, "bandwidth_hz");
  s.max_transmit_power_dbm = number_field(v, path, "max_transmit_power_dbm");
  s.max_jamming_power_dbm = number_field(v, path, "max_jamming_power_dbm");
  s.subcarriers = count_field(v, path, "subcarriers");
  s.time_bandwidth_product = number_field(v, path, "time_bandwidth_product");
  s.duty_factor = number_field(v, path, "duty_factor");
  s.path_loss_exponent = number_field(v, path, "path_loss_exponent");
  s.noise_comm_w = number_field(v, path, "noise_comm_w");
  s.noise_radar_w = number_field(v, path, "noise_radar_w");
  return s;
}

CovertLinkScenario parse_link(const json& v, const std::string& path) {
  CovertLinkScenario s;
  const std::string pl = child(path, "path_loss");
  const json& plj = field(v, path, "path_loss");
  s.path_loss.node_warden = number_field(plj, pl, "node_warden");
  s.path_loss.jammer_warden = number_field(plj, pl, "jammer_warden");
  s.path_loss.receiver_node = number_field(plj, pl, "receiver_node");
  s.path_loss.jammer_node = number_field(plj, pl, "jammer_node");
  const std::string fp = child(path, "fading");
  const json& fj = field(v, path, "fading");
  s.fading.warden_signal = fading_list(fj, fp, "warden_signal");
  s.fading.warden_jamming = fading_list(fj, fp, "warden_jamming");
  s.fading.comm_signal = fading_list(fj, fp, "comm_signal");
  s.fading.comm_jamming = fading_list(fj, fp, "comm_jamming");
  s.fading.radar_signal = fading_list(fj, fp, "radar_signal");
  s.fading.radar_jamming = fading_list(fj, fp, "radar_jamming");
  s.noise_comm_w = number_field(v, path, "noise_comm_w");
  s.noise_radar_w = number_field(v, path, "noise_radar_w");
  s.subcarriers = count_field(v, path, "subcarriers");
  s.subcarrier_spacing_hz = number_field(v, path, "subcarrier_spacing_hz");
  s.transmit_power_w = number_list(v, path, "transmit_power_w");
  s.pulse_duration_s = number_field(v, path, "pulse_duration_s");
  s.duty_factor = number_field(v, path, "duty_factor");
  return s;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

double truncated_normal(Rng& rng, double mean, double sd) {
  std::normal_distribution<double> normal(mean, sd);
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    const double x = normal(rng);
    if (x >= 0.0) return x;
  }
  throw std::runtime_error("truncated normal rejection sampling did not terminate");
}

}  // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double dbw_to_watts(double dbw) { return std::pow(10.0, dbw / 10.0); }
double watts_to_dbw(double w) { return 10.0 * std::log10(w); }

std::vector<double> MarketScenario::costs() const {
  std::vector<double> c;
  for (const auto& ch : channels) c.push_back(ch.cost());
  return c;
}

std::vector<double> MarketScenario::budgets() const {
  std::vector<double> b;
  for (const auto& n : nodes) b.push_back(n.budget);
  return b;
}

void MarketScenario::validate() const {
  const std::size_t n = nodes.size();
  const std::size_t m = channels.size();
  if (n == 0 || m == 0) throw ScenarioError("scenario needs at least one node and one channel");
  for (std::size_t j = 0; j < m; ++j) {
    const ChannelSpec& c = channels[j];
    const std::string p = "channels[" + std::to_string(j) + "]";
    if (!(c.jamming_power_w >= 0.0)) throw ScenarioError(p + ".jamming_power_w must be >= 0");
    if (!(c.cost() >= 0.0)) throw ScenarioError(p + ": cost kappa1 * p_FJ + kappa2 must be >= 0");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const NodeSpec& node = nodes[i];
    const std::string p = "nodes[" + std::to_string(i) + "]";
    if (!(node.budget >= 0.0)) throw ScenarioError(p + ".budget must be >= 0");
    if (!(node.eta_mi >= 0.0)) throw ScenarioError(p + ".eta_mi must be >= 0");
    if (!(node.eta_cc >= 0.0)) throw ScenarioError(p + ".eta_cc must be >= 0");
  }
  if (indicator.size() != n) throw ScenarioError("indicator must have one row per node");
  for (std::size_t i = 0; i < n; ++i) {
    if (indicator[i].size() != m)
      throw ScenarioError("indicator[" + std::to_string(i) + "] must have one entry per channel");
    for (int v : indicator[i])
      if (v != 0 && v != 1) throw ScenarioError("indicator[" + std::to_string(i) + "] entries must be 0 or 1");
  }
  if (links.rows() != n || links.cols() != m) throw ScenarioError("links must be an N x M grid");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const CovertLinkScenario& l = links(i, j);
      const std::string p = "links[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      if (l.node_pos != nodes[i].position || l.jammer_pos != nodes[i].jammer ||
          l.receiver_pos != nodes[i].receiver || l.warden_pos != nodes[i].warden)
        throw ScenarioError(p + ": positions differ from nodes[" + std::to_string(i) + "]");
      if (l.jamming_power_w != channels[j].jamming_power_w)
        throw ScenarioError(p + ": jamming power differs from channels[" + std::to_string(j) + "]");
      try {
        l.validate();
      } catch (const std::exception& e) {
        throw ScenarioError(p + ": " + e.what());
      }
    }
  }
  if (bids) {
    if (bids->rows() != n || bids->cols() != m)
      throw ScenarioError("bids must be " + std::to_string(n) + " x " + std::to_string(m) +
                          ", got " + std::to_string(bids->rows()) + " x " + std::to_string(bids->cols()));
    for (double b : bids->data())
      if (!(b >= 0.0)) throw ScenarioError("bids must be >= 0");
  }
  if (warden_half_width) {
    const Position3D& h = *warden_half_width;
    if (h.x < 0.0 || h.y < 0.0 || h.z < 0.0) throw ScenarioError("warden_half_width must be >= 0");
  }
}

void GeneratorConfig::validate() const {
  if (nodes == 0 || channels == 0) throw std::invalid_argument("generator needs N, M >= 1");
  if (!(area_m > 0.0)) throw std::invalid_argument("area must be > 0");
  if (!(cost_variance > 0.0)) throw std::invalid_argument("cost variance must be > 0");
  if (!(budget_min >= 0.0 && budget_min <= budget_max)) throw std::invalid_argument("bad budget range");
  if (!(jamming_fraction_min > 0.0 && jamming_fraction_min <= 1.0))
    throw std::invalid_argument("jamming fraction must lie in (0, 1]");
  if (!(comm_mu_min > 0.0 && comm_mu_min <= comm_mu_max)) throw std::invalid_argument("bad fading mu range");
  if (!(comm_mean_min > 0.0 && comm_mean_min <= comm_mean_max))
    throw std::invalid_argument("bad fading mean range");
  if (!(value_scale_min >= 0.0 && value_scale_min <= value_scale_max))
    throw std::invalid_argument("bad value scale range");
  if (metric_samples == 0) throw std::invalid_argument("metric samples must be >= 1");
}

CovertLinkScenario make_link(const SystemParams& system, const NodeSpec& node,
                             const ChannelSpec& channel, const LinkFading& fading) {
  CovertLinkScenario s;
  s.node_pos = node.position;
  s.jammer_pos = node.jammer;
  s.receiver_pos = node.receiver;
  s.warden_pos = node.warden;
  const double a = system.path_loss_exponent;
  s.path_loss = {a, a, a, a};
  s.fading = fading;
  s.noise_comm_w = system.noise_comm_w;
  s.noise_radar_w = system.noise_radar_w;
  s.subcarriers = system.subcarriers;
  s.subcarrier_spacing_hz = system.subcarrier_spacing_hz();
  s.transmit_power_w = {system.transmit_power_per_subcarrier_w()};
  s.jamming_power_w = channel.jamming_power_w;
  s.pulse_duration_s = system.pulse_duration_s();
  s.duty_factor = system.duty_factor;
  return s;
}

MarketScenario generate_scenario(const GeneratorConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  MarketScenario sc;
  sc.seed = seed;
  sc.system = cfg.system;
  const std::size_t n = cfg.nodes;
  const std::size_t m = cfg.channels;

  Rng geo = make_rng(seed, {kGeometryStream});
  std::uniform_real_distribution<double> area(0.0, cfg.area_m);
  std::uniform_real_distribution<double> rx_height(0.0, cfg.receiver_height_max_m);
  std::uniform_real_distribution<double> w_height(0.0, cfg.warden_height_max_m);
  sc.nodes.resize(n);
  for (auto& node : sc.nodes) {
    node.position = {area(geo), area(geo), 0.0};
    node.jammer = {area(geo), area(geo), 0.0};
    node.receiver = {area(geo), area(geo), rx_height(geo)};
    node.warden = {area(geo), area(geo), w_height(geo)};
  }

  Rng chan = make_rng(seed, {kChannelStream});
  const double max_jam_w = dbm_to_watts(cfg.system.max_jamming_power_dbm);
  std::uniform_real_distribution<double> jam_fraction(cfg.jamming_fraction_min, 1.0);
  sc.channels.resize(m);
  for (auto& c : sc.channels) {
    const double cost = truncated_normal(chan, cfg.cost_mean, std::sqrt(cfg.cost_variance));
    c.jamming_power_w = jam_fraction(chan) * max_jam_w;
    // Half of the cost scales with the friendly jamming power, half is fixed.
    c.kappa2 = 0.5 * cost;
    c.kappa1 = 0.5 * cost / c.jamming_power_w;
  }

  Rng fad = make_rng(seed, {kFadingStream});
  std::uniform_real_distribution<double> mu(cfg.comm_mu_min, cfg.comm_mu_max);
  std::uniform_real_distribution<double> mean(cfg.comm_mean_min, cfg.comm_mean_max);
  auto comm = [&] { return std::vector<AlphaMuParams>{{2.0, mu(fad), mean(fad)}}; };
  sc.links = Grid<CovertLinkScenario>(n, m);
  sc.indicator.assign(n, std::vector<int>(m, 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      LinkFading f;
      f.comm_signal = comm();
      f.comm_jamming = comm();
      f.radar_signal = comm();
      f.radar_jamming = comm();
      sc.links(i, j) = make_link(cfg.system, sc.nodes[i], sc.channels[j], f);
    }
  }

  // Weights normalise each node's mean MI and CC so valuations land on a
  // common money scale; w splits the weight between sensing and data.
  Rng nodes_rng = make_rng(seed, {kNodeStream});
  std::uniform_real_distribution<double> budget(cfg.budget_min, cfg.budget_max);
  std::uniform_real_distribution<double> scale(cfg.value_scale_min, cfg.value_scale_max);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    NodeSpec& node = sc.nodes[i];
    node.budget = budget(nodes_rng);
    const double s = scale(nodes_rng);
    const double w = unit(nodes_rng);
    double cc = 0.0;
    double mi = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      Rng r = make_rng(seed, {kMetricStream, i, j});
      cc += covert_cc(sc.links(i, j), cfg.metric_samples, r).value;
      mi += covert_mi(sc.links(i, j), cfg.metric_samples, r).value;
    }
    cc /= static_cast<double>(m);
    mi /= static_cast<double>(m);
    node.eta_cc = cc > 0.0 ? w * s / cc : 0.0;
    node.eta_mi = mi > 0.0 ? (1.0 - w) * s / mi : 0.0;
  }
  sc.validate();
  return sc;
}

std::string scenario_to_json(const MarketScenario& scenario) {
  return to_json_document(scenario).dump(2) + "\n";
}

MarketScenario scenario_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("malformed scenario JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ScenarioError("scenario document must be an object");
  const json& schema = field(doc, "", "schema");
  if (!schema.is_string() || schema.get<std::string>() != kSchemaName)
    throw ScenarioError(std::string("schema: expected \"") + kSchemaName + "\"");
  const json& version = field(doc, "", "version");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion)
    throw ScenarioError("version: unsupported scenario version");

  MarketScenario sc;
  const json& seed = field(doc, "", "seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0))
    throw ScenarioError("seed: expected a non-negative integer");
  sc.seed = seed.get<std::uint64_t>();
  sc.system = parse_system(field(doc, "", "system"), "system");

  const json& channels = array_field(doc, "", "channels");
  for (std::size_t j = 0; j < channels.size(); ++j) {
    const std::string p = index("channels", j);
    sc.channels.push_back({number_field(channels[j], p, "kappa1"), number_field(channels[j], p, "kappa2"),
                           number_field(channels[j], p, "jamming_power_w")});
  }
  const json& nodes = array_field(doc, "", "nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string p = index("nodes", i);
    NodeSpec n;
    n.position = position(field(nodes[i], p, "position"), child(p, "position"));
    n.jammer = position(field(nodes[i], p, "jammer"), child(p, "jammer"));
    n.receiver = position(field(nodes[i], p, "receiver"), child(p, "receiver"));
    n.warden = position(field(nodes[i], p, "warden"), child(p, "warden"));
    n.eta_mi = number_field(nodes[i], p, "eta_mi");
    n.eta_cc = number_field(nodes[i], p, "eta_cc");
    n.budget = number_field(nodes[i], p, "budget");
    sc.nodes.push_back(n);
  }
  const json& ind = array_field(doc, "", "indicator");
  for (std::size_t i = 0; i < ind.size(); ++i) {
    if (!ind[i].is_array()) throw ScenarioError(index("indicator", i) + ": expected an array");
    std::vector<int> row;
    for (std::size_t j = 0; j < ind[i].size(); ++j) {
      if (!ind[i][j].is_number_integer())
        throw ScenarioError(index(index("indicator", i), j) + ": expected 0 or 1");
      row.push_back(ind[i][j].get<int>());
    }
    sc.indicator.push_back(std::move(row));
  }
  const json& links = array_field(doc, "", "links");
  if (links.size() != sc.nodes.size()) throw ScenarioError("links must have one row per node");
  sc.links = Grid<CovertLinkScenario>(sc.nodes.size(), sc.channels.size());
  for (std::size_t i = 0; i < links.size(); ++i) {
    const std::string rp = index("links", i);
    if (!links[i].is_array() || links[i].size() != sc.channels.size())
      throw ScenarioError(rp + ": expected one link per channel");
    for (std::size_t j = 0; j < links[i].size(); ++j) {
      CovertLinkScenario l = parse_link(links[i][j], index(rp, j));
      l.node_pos = sc.nodes[i].position;
      l.jammer_pos = sc.nodes[i].jammer;
      l.receiver_pos = sc.nodes[i].receiver;
      l.warden_pos = sc.nodes[i].warden;
      l.jamming_power_w = sc.channels[j].jamming_power_w;
      sc.links(i, j) = std::move(l);
    }
  }
  if (doc.contains("bids")) {
    const json& b = doc["bids"];
    if (!b.is_array()) throw ScenarioError("bids: expected an array of rows");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (!b[i].is_array()) throw ScenarioError(index("bids", i) + ": expected an array");
      std::vector<double> row;
      for (std::size_t j = 0; j < b[i].size(); ++j) row.push_back(number(b[i][j], index(index("bids", i), j)));
      rows.push_back(std::move(row));
    }
    try {
      sc.bids = Matrix::from_rows(rows);
    } catch (const std::invalid_argument&) {
      throw ScenarioError("bids: rows have different lengths");
    }
  }
  if (doc.contains("warden_half_width"))
    sc.warden_half_width = position(doc["warden_half_width"], "warden_half_width");
  sc.validate();
  return sc;
}

void save_scenario(const MarketScenario& scenario, const std::filesystem::path& path) {
  scenario.validate();
  std::ofstream out(path);
  if (!out) throw ScenarioError("cannot open " + path.string() + " for writing");
  out << scenario_to_json(scenario);
  if (!out) throw ScenarioError("failed writing " + path.string());
}

MarketScenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

std::string scenario_hash(const MarketScenario& scenario) {
  Fnv1a h;
  h.text(to_json_document(scenario).dump());
  return hex64(h.digest());
}

CovertLinkScenario reference_link(const SystemParams& system, double jamming_power_w) {
  NodeSpec node;
  node.receiver = {7.0, 10.0, 19.0};
  node.position = {3.0, 8.0, 0.0};
  node.jammer = {6.0, 21.0, 0.0};
  node.warden = {3.0, 14.0, 4.0};
  ChannelSpec channel;
  channel.jamming_power_w = jamming_power_w;
  return make_link(system, node, channel, LinkFading{});
}

BidTable reference_bid_table() {
  BidTable t;
  t.bids = Matrix::from_rows({{4.17, 3.11, 3.69},
                              {4.77, 2.56, 3.09},
                              {4.42, 4.20, 3.12},
                              {4.23, 4.33, 3.26},
                              {4.75, 4.07, 4.58}});
  t.budgets = {5.0, 5.0, 5.0, 5.0, 6.86};
  t.costs = {2.0, 2.0, 2.0};
  t.varied_node = 4;
  return t;
}

}  // namespace jrc
