#include "jrc/channel_model.hpp"

#include <limits>

namespace jrc {

namespace {

constexpr double kGammaTolerance = 1e-12;
constexpr int kGammaMaxIterations = 10000;

double gamma_p_series(double a, double x) {
  // P(a,x) = x^a e^-x / Gamma(a+1) * sum_n x^n / ((a+1)...(a+n))
  double term = 1.0 / a;
  double sum = term;
  double denom = a;
  for (int n = 0; n < kGammaMaxIterations; ++n) {
    denom += 1.0;
    term *= x / denom;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kGammaTolerance) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_continued_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kGammaMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kGammaTolerance) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double distance(const Position3D& a, const Position3D& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double AlphaMuParams::beta() const {
  if (deterministic()) return mean_power;
  return mean_power * std::exp(std::lgamma(mu) - std::lgamma(mu + 2.0 / alpha));
}

void AlphaMuParams::validate() const {
  const bool mu_ok = mu > 0.0 && !std::isnan(mu);
  if (!(alpha > 0.0) || !mu_ok || !(mean_power > 0.0) || !std::isfinite(alpha) ||
      !std::isfinite(mean_power)) {
    throw std::invalid_argument("alpha-mu parameters must be finite and positive (alpha=" +
                                std::to_string(alpha) + ", mu=" + std::to_string(mu) +
                                ", mean_power=" + std::to_string(mean_power) + ")");
  }
}

double path_gain(const Position3D& a, const Position3D& b, double path_loss_exponent) {
  if (!(path_loss_exponent >= 0.0)) throw std::invalid_argument("path loss exponent must be >= 0");
  const double d = distance(a, b);
  if (!(d > 0.0)) throw DegenerateGeometry("coincident link endpoints");
  return std::pow(d, -path_loss_exponent);
}

double path_gain(const LinkGeometry& geometry) {
  return path_gain(geometry.endpoint_a, geometry.endpoint_b, geometry.path_loss_exponent);
}

AlphaMuSampler::AlphaMuSampler(const AlphaMuParams& params)
    : deterministic_((params.validate(), params.deterministic())),
      beta_(params.beta()),
      exponent_(2.0 / params.alpha),
      gamma_(deterministic_ ? 1.0 : params.mu, 1.0) {}

double alpha_mu_sample(const AlphaMuParams& params, Rng& rng) {
  AlphaMuSampler sampler(params);
  return sampler(rng);
}

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("regularized_gamma_p: a must be positive");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return std::min(1.0, gamma_p_series(a, x));
  return std::max(0.0, 1.0 - gamma_q_continued_fraction(a, x));
}

double alpha_mu_cdf(const AlphaMuParams& params, double gamma) {
  params.validate();
  if (gamma <= 0.0) return 0.0;
  if (params.deterministic()) return gamma >= params.mean_power ? 1.0 : 0.0;
  const double arg = std::pow(gamma / params.beta(), params.alpha / 2.0);
  return regularized_gamma_p(params.mu, arg);
}

}  // namespace jrc
