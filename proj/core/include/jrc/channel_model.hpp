#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "jrc/random.hpp"

namespace jrc {

/// Thrown when two devices share a location; distances must be positive.
class DegenerateGeometry : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Position3D {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Position3D&, const Position3D&) = default;
};

double distance(const Position3D& a, const Position3D& b);

/// Parameters of a squared alpha-mu fading power gain. mu = +infinity
/// denotes a non-fading link whose gain is always mean_power.
struct AlphaMuParams {
  double alpha = 2.0;
  double mu = 1.0;
  double mean_power = 1.0;

  /// Scale term beta = mean_power * Gamma(mu) / Gamma(mu + 2/alpha).
  double beta() const;
  void validate() const;
  bool deterministic() const { return std::isinf(mu); }

  friend bool operator==(const AlphaMuParams&, const AlphaMuParams&) = default;
};

struct LinkGeometry {
  Position3D endpoint_a;
  Position3D endpoint_b;
  double path_loss_exponent = 2.0;
};

/// Large-scale gain D^-alpha. Throws DegenerateGeometry on coincident endpoints.
double path_gain(const LinkGeometry& geometry);
double path_gain(const Position3D& a, const Position3D& b, double path_loss_exponent);

/// One draw of the fading power gain: beta * W^(2/alpha) with W ~ Gamma(mu, 1).
double alpha_mu_sample(const AlphaMuParams& params, Rng& rng);

/// Sampler that caches the derived constants; use in hot loops.
class AlphaMuSampler {
 public:
  explicit AlphaMuSampler(const AlphaMuParams& params);
  double operator()(Rng& rng) {
    if (deterministic_) return beta_;
    return beta_ * std::pow(gamma_(rng), exponent_);
  }

 private:
  bool deterministic_;
  double beta_;
  double exponent_;
  std::gamma_distribution<double> gamma_;
};

/// CDF of the fading power gain, gamma_lower(mu, (g/beta)^(alpha/2)) / Gamma(mu).
double alpha_mu_cdf(const AlphaMuParams& params, double gamma);

/// Regularized lower incomplete gamma P(a, x). Series below x = a + 1,
/// Lentz continued fraction above.
double regularized_gamma_p(double a, double x);

}  // namespace jrc
