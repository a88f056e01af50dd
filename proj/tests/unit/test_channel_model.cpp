#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "jrc/channel_model.hpp"

using namespace jrc;

TEST(RegularizedGamma, KnownValues) {
  EXPECT_NEAR(regularized_gamma_p(1.0, 1.0), 1.0 - std::exp(-1.0), 1e-12);
  EXPECT_NEAR(regularized_gamma_p(1.0, 5.0), 1.0 - std::exp(-5.0), 1e-12);
  // P(2, x) = 1 - e^-x (1 + x)
  EXPECT_NEAR(regularized_gamma_p(2.0, 3.0), 1.0 - std::exp(-3.0) * 4.0, 1e-12);
  // P(1/2, x) = erf(sqrt x)
  EXPECT_NEAR(regularized_gamma_p(0.5, 2.0), std::erf(std::sqrt(2.0)), 1e-12);
  EXPECT_EQ(regularized_gamma_p(3.0, 0.0), 0.0);
}

TEST(AlphaMu, RayleighCdfIsExponential) {
  const AlphaMuParams p{2.0, 1.0, 2.5};
  for (double g : {0.1, 1.0, 2.5, 7.0})
    EXPECT_NEAR(alpha_mu_cdf(p, g), 1.0 - std::exp(-g / 2.5), 1e-12);
  EXPECT_DOUBLE_EQ(p.beta(), 2.5);
}

TEST(AlphaMu, NakagamiCdfMatchesGamma) {
  // alpha = 2 gives Nakagami-m power: Gamma(mu, mean / mu).
  const AlphaMuParams p{2.0, 3.0, 1.0};
  EXPECT_NEAR(alpha_mu_cdf(p, 0.5), regularized_gamma_p(3.0, 1.5), 1e-12);
}

TEST(AlphaMu, SampleMeanMatchesMeanPower) {
  const AlphaMuParams p{1.5, 2.0, 0.7};
  Rng rng(3);
  double s = 0.0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) s += alpha_mu_sample(p, rng);
  EXPECT_NEAR(s / n, 0.7, 0.01 * 0.7);
}

TEST(AlphaMu, InfiniteMuIsDeterministic) {
  const AlphaMuParams p{2.0, std::numeric_limits<double>::infinity(), 1.3};
  Rng rng(1);
  EXPECT_TRUE(p.deterministic());
  EXPECT_DOUBLE_EQ(alpha_mu_sample(p, rng), 1.3);
  EXPECT_EQ(alpha_mu_cdf(p, 1.29), 0.0);
  EXPECT_EQ(alpha_mu_cdf(p, 1.3), 1.0);
}

TEST(AlphaMu, RejectsBadParameters) {
  EXPECT_THROW((AlphaMuParams{0.0, 1.0, 1.0}.validate()), std::invalid_argument);
  EXPECT_THROW((AlphaMuParams{2.0, -1.0, 1.0}.validate()), std::invalid_argument);
  EXPECT_THROW((AlphaMuParams{2.0, 1.0, 0.0}.validate()), std::invalid_argument);
}

TEST(PathGain, InverseSquare) {
  EXPECT_NEAR(path_gain({0, 0, 0}, {3, 4, 0}, 2.0), 1.0 / 25.0, 1e-15);
  EXPECT_NEAR(distance({1, 2, 3}, {1, 2, 5}), 2.0, 1e-15);
  EXPECT_ANY_THROW(path_gain({1, 1, 1}, {1, 1, 1}, 2.0));
}
