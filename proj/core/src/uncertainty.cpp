#include "jrc/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "jrc/hash.hpp"
#include "jrc/lp.hpp"
#include "jrc/parallel.hpp"

namespace jrc {

namespace {

double membership_tol(double scale) { return 1e-9 * std::max(1.0, std::abs(scale)); }

void check_shape(const Matrix& bids, std::size_t n, std::size_t m) {
  if (bids.rows() != n || bids.cols() != m)
    throw std::invalid_argument("bid matrix is " + std::to_string(bids.rows()) + "x" +
                                std::to_string(bids.cols()) + ", set is " + std::to_string(n) +
                                "x" + std::to_string(m));
}

// Extremum of f_j + y_ij over the channel-j slice of a historical set.
double historical_extreme(const HistoricalUncertainty& set, std::size_t i, std::size_t j,
                          bool maximize) {
  const std::size_t n = set.nodes;
  const double mu = set.component_mean[j];
  const double delta = set.component_std[j];
  LinearProgram lp;
  lp.direction = maximize ? Direction::kMaximize : Direction::kMinimize;
  lp.add_variable(1.0, set.factor_min[j], set.factor_max[j]);
  for (std::size_t k = 0; k < n; ++k)
    lp.add_variable(k == i ? 1.0 : 0.0, mu - set.component_span * delta,
                    mu + set.component_span * delta);
  std::vector<double> sum(n + 1, 1.0);
  sum[0] = 0.0;
  const double spread = set.theta * std::sqrt(static_cast<double>(n)) * delta;
  const double target = static_cast<double>(n) * mu;
  lp.add_constraint(sum, Sense::kLessEqual, target + spread);
  lp.add_constraint(sum, Sense::kGreaterEqual, target - spread);
  const LpSolution sol = solve_lp(lp);
  if (!sol.optimal()) throw std::runtime_error("historical profile LP not optimal");
  return sol.objective;
}

}  // namespace

// ---------------------------------------------------------------------------
// IntervalUncertainty

IntervalUncertainty IntervalUncertainty::from_bounds(const Matrix& lower, const Matrix& upper) {
  if (!lower.same_shape(upper)) throw std::invalid_argument("interval bounds differ in shape");
  IntervalUncertainty set;
  set.center = Matrix(lower.rows(), lower.cols());
  set.radius = Matrix(lower.rows(), lower.cols());
  for (std::size_t k = 0; k < lower.size(); ++k) {
    const double lo = lower.data()[k];
    const double hi = upper.data()[k];
    if (lo > hi) throw std::invalid_argument("interval lower bound above upper bound");
    set.center.data()[k] = 0.5 * (lo + hi);
    set.radius.data()[k] = 0.5 * (hi - lo);
  }
  return set;
}

Matrix IntervalUncertainty::lower() const {
  Matrix out = center;
  for (std::size_t k = 0; k < out.size(); ++k) out.data()[k] -= radius.data()[k];
  return out;
}

Matrix IntervalUncertainty::upper() const {
  Matrix out = center;
  for (std::size_t k = 0; k < out.size(); ++k) out.data()[k] += radius.data()[k];
  return out;
}

void IntervalUncertainty::validate() const {
  if (!center.same_shape(radius)) throw std::invalid_argument("center and radius differ in shape");
  for (std::size_t k = 0; k < center.size(); ++k) {
    const double c = center.data()[k];
    const double r = radius.data()[k];
    if (!std::isfinite(c) || !std::isfinite(r)) throw std::invalid_argument("non-finite interval");
    if (r < 0.0) throw std::invalid_argument("negative interval radius");
    if (c - r < -membership_tol(c)) throw std::invalid_argument("interval admits negative valuations");
  }
  if (has_dep_range()) {
    if (!dep_min->same_shape(center) || !dep_max->same_shape(center) ||
        !value_scale->same_shape(center))
      throw std::invalid_argument("dep range matrices differ in shape");
  }
}

// ---------------------------------------------------------------------------
// HistoricalUncertainty

void HistoricalUncertainty::validate() const {
  const std::size_t m = factor_min.size();
  if (nodes == 0 || m == 0) throw std::invalid_argument("historical set is empty");
  if (factor_max.size() != m || component_mean.size() != m || component_std.size() != m)
    throw std::invalid_argument("historical set vectors differ in length");
  for (std::size_t j = 0; j < m; ++j) {
    if (!(factor_min[j] <= factor_max[j])) throw std::invalid_argument("factor bounds reversed");
    if (!(component_std[j] > 0.0)) throw std::invalid_argument("component std must be > 0");
  }
  if (!(theta >= 0.0)) throw std::invalid_argument("theta must be >= 0");
  if (!(component_span > 0.0)) throw std::invalid_argument("component span must be > 0");
}

Matrix HistoricalUncertainty::center() const {
  Matrix c(nodes, channels());
  for (std::size_t j = 0; j < channels(); ++j)
    for (std::size_t i = 0; i < nodes; ++i)
      c(i, j) = 0.5 * (factor_min[j] + factor_max[j]) + component_mean[j];
  return c;
}

std::pair<double, double> HistoricalUncertainty::factor_range(std::size_t j,
                                                              std::span<const double> column) const {
  const double n = static_cast<double>(nodes);
  const double mu = component_mean[j];
  const double delta = component_std[j];
  double lo = factor_min[j];
  double hi = factor_max[j];
  double sum = 0.0;
  for (double v : column) {
    lo = std::max(lo, v - mu - component_span * delta);
    hi = std::min(hi, v - mu + component_span * delta);
    sum += v;
  }
  const double spread = theta * std::sqrt(n) * delta;
  lo = std::max(lo, (sum - n * mu - spread) / n);
  hi = std::min(hi, (sum - n * mu + spread) / n);
  return {lo, hi};
}

// ---------------------------------------------------------------------------
// Set-level operations

std::size_t set_nodes(const UncertaintySet& set) {
  return std::visit(
      [](const auto& s) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, IntervalUncertainty>)
          return s.nodes();
        else
          return s.nodes;
      },
      set);
}

std::size_t set_channels(const UncertaintySet& set) {
  return std::visit([](const auto& s) { return s.channels(); }, set);
}

std::uint64_t set_hash(const UncertaintySet& set) {
  Fnv1a h;
  if (const auto* s = std::get_if<IntervalUncertainty>(&set)) {
    h.text("interval");
    h.value(static_cast<std::uint64_t>(s->nodes()));
    h.values(s->center.data());
    h.values(s->radius.data());
  } else {
    const auto& hs = std::get<HistoricalUncertainty>(set);
    h.text("historical");
    h.value(static_cast<std::uint64_t>(hs.nodes));
    h.values(hs.factor_min);
    h.values(hs.factor_max);
    h.values(hs.component_mean);
    h.values(hs.component_std);
    h.value(hs.theta);
    h.value(hs.component_span);
  }
  return h.digest();
}

bool contains(const IntervalUncertainty& set, const Matrix& bids) {
  check_shape(bids, set.nodes(), set.channels());
  for (std::size_t k = 0; k < bids.size(); ++k) {
    const double c = set.center.data()[k];
    if (std::abs(bids.data()[k] - c) > set.radius.data()[k] + membership_tol(c)) return false;
  }
  return true;
}

bool contains(const HistoricalUncertainty& set, const Matrix& bids) {
  check_shape(bids, set.nodes, set.channels());
  std::vector<double> column(set.nodes);
  for (std::size_t j = 0; j < set.channels(); ++j) {
    for (std::size_t i = 0; i < set.nodes; ++i) column[i] = bids(i, j);
    const auto [lo, hi] = set.factor_range(j, column);
    if (lo > hi + membership_tol(set.factor_max[j])) return false;
  }
  return true;
}

bool contains(const UncertaintySet& set, const Matrix& bids) {
  return std::visit([&](const auto& s) { return contains(s, bids); }, set);
}

std::vector<double> worst_case_profile(const UncertaintySet& set, const Matrix& x, std::size_t i) {
  if (const auto* s = std::get_if<IntervalUncertainty>(&set)) {
    std::vector<double> u(s->channels());
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = s->center(i, j) - s->radius(i, j);
    return u;
  }
  const auto& hs = std::get<HistoricalUncertainty>(set);
  if (x.rows() != hs.nodes || x.cols() != hs.channels())
    throw std::invalid_argument("allocation shape does not match set");
  // The per-channel terms decouple: each u_ij is bounded independently of the
  // other channels, so the weighted minimum is attained channel by channel.
  std::vector<double> u(hs.channels());
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = historical_extreme(hs, i, j, false);
  return u;
}

std::vector<double> best_case_profile(const UncertaintySet& set, const Matrix& y, std::size_t i) {
  if (const auto* s = std::get_if<IntervalUncertainty>(&set)) {
    std::vector<double> u(s->channels());
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = s->center(i, j) + s->radius(i, j);
    return u;
  }
  const auto& hs = std::get<HistoricalUncertainty>(set);
  if (y.rows() != hs.nodes || y.cols() != hs.channels())
    throw std::invalid_argument("allocation shape does not match set");
  std::vector<double> u(hs.channels());
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = historical_extreme(hs, i, j, true);
  return u;
}

Matrix sample_realized_bids(const IntervalUncertainty& set, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix bids(set.nodes(), set.channels());
  const bool via_dep = set.has_dep_range();
  for (std::size_t k = 0; k < bids.size(); ++k) {
    const double u = unit(rng);
    if (via_dep) {
      const double lo = set.dep_min->data()[k];
      const double hi = set.dep_max->data()[k];
      bids.data()[k] = set.value_scale->data()[k] * (lo + u * (hi - lo));
    } else {
      const double r = set.radius.data()[k];
      bids.data()[k] = set.center.data()[k] - r + 2.0 * r * u;
    }
  }
  return bids;
}

HistoricalUncertainty fit_historical(const std::vector<Matrix>& history, double theta,
                                     double component_span) {
  if (history.empty()) throw std::invalid_argument("fit_historical: empty history");
  const std::size_t n = history.front().rows();
  const std::size_t m = history.front().cols();
  HistoricalUncertainty set;
  set.nodes = n;
  set.theta = theta;
  set.component_span = component_span;
  set.factor_min.assign(m, kInfinity);
  set.factor_max.assign(m, -kInfinity);
  set.component_mean.assign(m, 0.0);
  set.component_std.assign(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> residuals;
    for (const Matrix& snap : history) {
      if (snap.rows() != n || snap.cols() != m)
        throw std::invalid_argument("fit_historical: snapshot shapes differ");
      std::vector<double> col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = snap(i, j);
      std::vector<double> sorted = col;
      std::sort(sorted.begin(), sorted.end());
      const double median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
      set.factor_min[j] = std::min(set.factor_min[j], median);
      set.factor_max[j] = std::max(set.factor_max[j], median);
      for (double v : col) residuals.push_back(v - median);
    }
    const double mean =
        std::accumulate(residuals.begin(), residuals.end(), 0.0) / static_cast<double>(residuals.size());
    double ss = 0.0;
    for (double r : residuals) ss += (r - mean) * (r - mean);
    const double sd = residuals.size() > 1 ? std::sqrt(ss / static_cast<double>(residuals.size() - 1)) : 0.0;
    set.component_mean[j] = mean;
    set.component_std[j] = std::max(sd, 1e-9);
  }
  set.validate();
  return set;
}

// ---------------------------------------------------------------------------
// Warden box

bool WardenBox::contains(const Position3D& p) const {
  return std::abs(p.x - center.x) <= half_width.x && std::abs(p.y - center.y) <= half_width.y &&
         std::abs(p.z - center.z) <= half_width.z;
}

Position3D WardenBox::clamp(const Position3D& p) const {
  return {std::clamp(p.x, center.x - half_width.x, center.x + half_width.x),
          std::clamp(p.y, center.y - half_width.y, center.y + half_width.y),
          std::clamp(p.z, center.z - half_width.z, center.z + half_width.z)};
}

namespace {

std::vector<double> to_vec(const Position3D& p) { return {p.x, p.y, p.z}; }
Position3D to_pos(std::span<const double> v) { return {v[0], v[1], v[2]}; }

std::vector<double> axis_points(double c, double h, std::size_t count) {
  if (h == 0.0 || count <= 1) return {c};
  std::vector<double> pts(count);
  for (std::size_t k = 0; k < count; ++k)
    pts[k] = c - h + 2.0 * h * static_cast<double>(k) / static_cast<double>(count - 1);
  return pts;
}

DepRange search_pair(const CovertLinkScenario& link, const Position3D& half_width,
                     const WardenSearchConfig& config, std::uint64_t seed, std::size_t i,
                     std::size_t j, const DepRange* warm) {
  const WardenDepModel model(link, config.samples, derive_seed(seed, {i, j}), config.threshold);
  const WardenBox box{link.warden_pos, half_width};
  DepRange r;
  r.nominal = model.channel_dep(box.center);
  r.min = r.max = r.nominal;
  r.argmin = r.argmax = box.center;
  if (half_width.x == 0.0 && half_width.y == 0.0 && half_width.z == 0.0) return r;

  auto consider = [&](const Position3D& p) {
    const double d = model.channel_dep(p);
    if (d < r.min) {
      r.min = d;
      r.argmin = p;
    }
    if (d > r.max) {
      r.max = d;
      r.argmax = p;
    }
  };
  if (warm) {
    consider(box.clamp(warm->argmin));
    consider(box.clamp(warm->argmax));
  }
  for (double x : axis_points(box.center.x, half_width.x, config.grid_per_axis))
    for (double y : axis_points(box.center.y, half_width.y, config.grid_per_axis))
      for (double z : axis_points(box.center.z, half_width.z, config.grid_per_axis))
        consider({x, y, z});

  const std::vector<double> lower{box.center.x - half_width.x, box.center.y - half_width.y,
                                  box.center.z - half_width.z};
  const std::vector<double> upper{box.center.x + half_width.x, box.center.y + half_width.y,
                                  box.center.z + half_width.z};
  Rng rng = make_rng(seed, {i, j, 0x50534fULL});
  const PsoResult lo = pso_minimize(
      [&](std::span<const double> p) { return model.channel_dep(to_pos(p)); }, lower, upper,
      config.pso, rng, {to_vec(r.argmin), to_vec(box.center)});
  if (lo.best_value < r.min) {
    r.min = lo.best_value;
    r.argmin = to_pos(lo.best_position);
  }
  const PsoResult hi = pso_minimize(
      [&](std::span<const double> p) { return -model.channel_dep(to_pos(p)); }, lower, upper,
      config.pso, rng, {to_vec(r.argmax), to_vec(box.center)});
  if (-hi.best_value > r.max) {
    r.max = -hi.best_value;
    r.argmax = to_pos(hi.best_position);
  }
  return r;
}

}  // namespace

WardenBoxResult build_interval_from_warden_box(const Grid<CovertLinkScenario>& links,
                                               const Matrix& value_scale,
                                               const Position3D& half_width,
                                               const WardenSearchConfig& config,
                                               std::uint64_t seed, const Grid<DepRange>* warm) {
  const std::size_t n = links.rows();
  const std::size_t m = links.cols();
  if (value_scale.rows() != n || value_scale.cols() != m)
    throw std::invalid_argument("value scale shape does not match links");
  if (half_width.x < 0.0 || half_width.y < 0.0 || half_width.z < 0.0)
    throw std::invalid_argument("warden box half width must be >= 0");
  if (warm && (warm->rows() != n || warm->cols() != m))
    throw std::invalid_argument("warm start shape does not match links");

  WardenBoxResult out;
  out.deps = Grid<DepRange>(n, m);
  parallel_for(n * m, config.threads, [&](std::size_t k) {
    const std::size_t i = k / m;
    const std::size_t j = k % m;
    out.deps(i, j) =
        search_pair(links(i, j), half_width, config, seed, i, j, warm ? &(*warm)(i, j) : nullptr);
  });

  Matrix lower(n, m), upper(n, m), dmin(n, m), dmax(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const DepRange& d = out.deps(i, j);
      dmin(i, j) = d.min;
      dmax(i, j) = d.max;
      lower(i, j) = value_scale(i, j) * d.min;
      upper(i, j) = value_scale(i, j) * d.max;
    }
  }
  out.set = IntervalUncertainty::from_bounds(lower, upper);
  out.set.dep_min = std::move(dmin);
  out.set.dep_max = std::move(dmax);
  out.set.value_scale = value_scale;
  return out;
}

}  // namespace jrc
