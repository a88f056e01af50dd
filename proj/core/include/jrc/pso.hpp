#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "jrc/random.hpp"

namespace jrc {

struct PsoConfig {
  std::size_t particles = 20;
  std::size_t iterations = 50;
  double inertia = 0.7;
  double cognitive = 1.5;
  double social = 1.5;
};

struct PsoResult {
  std::vector<double> best_position;
  double best_value = 0.0;
  std::size_t evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Box-constrained particle swarm minimiser. Positions are clamped to
/// [lower, upper] and velocities to the box width. Any `seeds` replace the
/// first particles' random starting points, so the returned value is never
/// worse than the best seed.
PsoResult pso_minimize(const Objective& f, const std::vector<double>& lower,
                       const std::vector<double>& upper, const PsoConfig& config, Rng& rng,
                       const std::vector<std::vector<double>>& seeds = {});

}  // namespace jrc
