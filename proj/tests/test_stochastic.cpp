#include "algstoch/errors.hpp"
#include "algstoch/stochastic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace algstoch;

TEST(Philox, KnownAnswerZeroCounterZeroKey) {
  auto out = Philox4x32::block({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (Philox4x32::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
}

TEST(Philox, KnownAnswerAllOnes) {
  auto out = Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff});
  EXPECT_EQ(out, (Philox4x32::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
}

TEST(NormalStream, MomentsAndIndependenceOfStreams) {
  NormalStream s(3, 0);
  const int n = 200000;
  double sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = s.next();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(sq / n, 1.0, 5.0 * std::sqrt(2.0 / n));

  NormalStream a(3, 1);
  NormalStream b(3, 1);
  NormalStream c(3, 2);
  const double first = a.next();
  EXPECT_EQ(first, b.next());
  EXPECT_NE(first, c.next());
}

TEST(NormalStream, UniformsStayInsideTheOpenInterval) {
  NormalStream s(0, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.next_uniform();
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Partition, UniformEndsExactlyAtHorizon) {
  auto p = Partition::uniform(0.3, 7);
  EXPECT_EQ(p.steps(), 7u);
  EXPECT_EQ(p.horizon(), 0.3);
  EXPECT_NEAR(p.mesh(), 0.3 / 7, 1e-15);
  EXPECT_THROW(Partition({0.0, 0.5, 0.5}), PreconditionError);
  EXPECT_THROW(Partition::uniform(1.0, 0), PreconditionError);
}

TEST(DeltaCalculus, TelescopingIsExactForAnyPath) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto w = sample_brownian(1.0, 500, seed);
    EXPECT_NEAR(telescoped_sum(w), w.back() - w.front(), 1e-12);
  }
}

TEST(DeltaCalculus, ProductRuleResidualAtRounding) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto x = sample_brownian(1.0, 1000, seed, 0);
    auto y = sample_brownian(1.0, 1000, seed, 1);
    auto r = check_product_rule(x, y);
    EXPECT_LE(r.max_residual, 1e-10 * std::max(r.scale, 1.0));
  }
  auto x = sample_brownian(1.0, 10, 1);
  auto y = sample_brownian(1.0, 20, 1);
  EXPECT_THROW(check_product_rule(x, y), PreconditionError);
}

TEST(DeltaCalculus, QuadraticVariationNearHorizon) {
  const std::size_t n = 20000;
  int inside = 0;
  for (std::uint64_t p = 0; p < 50; ++p) {
    auto w = sample_brownian(2.0, n, 9, p);
    inside += std::abs(quadratic_variation(w) - 2.0) <= 3.0 * 2.0 * std::sqrt(2.0 / n);
    EXPECT_LT(std::abs(cross_variation(w)), 0.05);
  }
  EXPECT_GE(inside, 45);
}

TEST(DeltaCalculus, CoarseningKeepsTheSamePath) {
  auto w = sample_brownian(1.0, 64, 4);
  auto c = coarsen(w, 4);
  EXPECT_EQ(c.partition.steps(), 16u);
  EXPECT_EQ(c.values[3], w.values[12]);
  EXPECT_EQ(c.back(), w.back());
  EXPECT_THROW(coarsen(w, 5), PreconditionError);
}

TEST(Ito, ExactCasesUnderEachRule) {
  auto w = sample_brownian(1.0, 256, 2);
  EXPECT_LT(ito_residual(ItoFunction::w2, w, ItoRule::pathwise), 1e-12);
  EXPECT_LT(ito_residual(ItoFunction::t, w, ItoRule::quadratic_variation), 1e-12);
  // Under (dW)² = dt the w² residual is |QV − T|.
  EXPECT_NEAR(ito_residual(ItoFunction::w2, w, ItoRule::quadratic_variation), std::abs(quadratic_variation(w) - 1.0),
              1e-12);
  EXPECT_EQ(parse_ito_function("w^3"), ItoFunction::w3);
  EXPECT_THROW(parse_ito_function("sin"), UnsupportedOperation);
}

TEST(Ito, CubeResidualShrinksWithMesh) {
  double coarse = 0.0;
  double fine = 0.0;
  for (std::uint64_t p = 0; p < 100; ++p) {
    auto w = sample_brownian(1.0, 1024, 6, p);
    const double a = ito_residual(ItoFunction::w3, coarsen(w, 16), ItoRule::quadratic_variation);
    const double b = ito_residual(ItoFunction::w3, w, ItoRule::quadratic_variation);
    coarse += a * a;
    fine += b * b;
  }
  // Four halvings at rate √2 give a factor near 4.
  const double ratio = std::sqrt(coarse / fine);
  EXPECT_GT(ratio, 2.5);
  EXPECT_LT(ratio, 6.0);
}

TEST(GBM, ZeroVolatilityIsDeterministic) {
  GBMParams p{0.1, 0.0, 1.0, 1.0, 100, 0};
  auto x = simulate_gbm(p);
  EXPECT_DOUBLE_EQ(x.back(), std::exp(0.1));
  EXPECT_EQ(x.front(), 1.0);
  std::vector<DiscretePath> paths(30, x);
  auto e = estimate_log_drift(paths);
  EXPECT_NEAR(e.mean, 0.1, 1e-15);
  EXPECT_EQ(e.standard_error, 0.0);
}

TEST(GBM, LogDriftWithinThreeStandardErrors) {
  GBMParams p{0.1, 0.2, 2.0, 1.0, 50, 12};
  std::vector<DiscretePath> paths;
  for (std::uint64_t i = 0; i < 2000; ++i) paths.push_back(simulate_gbm(p, i));
  auto e = estimate_log_drift(paths);
  EXPECT_NEAR(e.mean, 0.08, 3.0 * e.standard_error);
  EXPECT_NEAR(e.standard_error, 0.2 / std::sqrt(2000.0), 0.001);
  paths.erase(paths.begin() + 10, paths.end());
  EXPECT_THROW(estimate_log_drift(paths), PreconditionError);
  p.x0 = 0.0;
  EXPECT_THROW(simulate_gbm(p), PreconditionError);
}

TEST(NormalCdf, ReferenceValues) {
  EXPECT_DOUBLE_EQ(normal_cdf(0.0), 0.5);
  EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-12);
  EXPECT_NEAR(2.0 * normal_cdf(3.0) - 1.0, 0.9973002039367398, 1e-14);
}
