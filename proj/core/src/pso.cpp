#include "jrc/pso.hpp"

#include <algorithm>
#include <stdexcept>

namespace jrc {

PsoResult pso_minimize(const Objective& f, const std::vector<double>& lower,
                       const std::vector<double>& upper, const PsoConfig& config, Rng& rng,
                       const std::vector<std::vector<double>>& seeds) {
  const std::size_t dim = lower.size();
  if (dim == 0 || upper.size() != dim) throw std::invalid_argument("pso: bad bounds");
  for (std::size_t d = 0; d < dim; ++d)
    if (!(lower[d] <= upper[d])) throw std::invalid_argument("pso: lower bound above upper");
  if (config.particles == 0) throw std::invalid_argument("pso: need at least one particle");

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = std::max(config.particles, seeds.size());

  std::vector<std::vector<double>> pos(n, std::vector<double>(dim));
  std::vector<std::vector<double>> vel(n, std::vector<double>(dim, 0.0));
  std::vector<double> width(dim);
  for (std::size_t d = 0; d < dim; ++d) width[d] = upper[d] - lower[d];

  auto clamp_into = [&](std::vector<double>& x) {
    for (std::size_t d = 0; d < dim; ++d) x[d] = std::clamp(x[d], lower[d], upper[d]);
  };

  for (std::size_t p = 0; p < n; ++p) {
    if (p < seeds.size()) {
      if (seeds[p].size() != dim) throw std::invalid_argument("pso: seed dimension mismatch");
      pos[p] = seeds[p];
      clamp_into(pos[p]);
    } else {
      for (std::size_t d = 0; d < dim; ++d) pos[p][d] = lower[d] + width[d] * unit(rng);
    }
    for (std::size_t d = 0; d < dim; ++d) vel[p][d] = width[d] * (unit(rng) - 0.5);
  }

  PsoResult result;
  std::vector<std::vector<double>> personal = pos;
  std::vector<double> personal_value(n);
  std::size_t best = 0;
  for (std::size_t p = 0; p < n; ++p) {
    personal_value[p] = f(pos[p]);
    ++result.evaluations;
    if (personal_value[p] < personal_value[best]) best = p;
  }
  std::vector<double> global = personal[best];
  double global_value = personal_value[best];

  for (std::size_t it = 0; it < config.iterations; ++it) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t d = 0; d < dim; ++d) {
        const double r1 = unit(rng);
        const double r2 = unit(rng);
        double v = config.inertia * vel[p][d] +
                   config.cognitive * r1 * (personal[p][d] - pos[p][d]) +
                   config.social * r2 * (global[d] - pos[p][d]);
        vel[p][d] = std::clamp(v, -width[d], width[d]);
        pos[p][d] += vel[p][d];
      }
      clamp_into(pos[p]);
      const double value = f(pos[p]);
      ++result.evaluations;
      if (value < personal_value[p]) {
        personal_value[p] = value;
        personal[p] = pos[p];
        if (value < global_value) {
          global_value = value;
          global = pos[p];
        }
      }
    }
  }
  result.best_position = std::move(global);
  result.best_value = global_value;
  return result;
}

}  // namespace jrc
