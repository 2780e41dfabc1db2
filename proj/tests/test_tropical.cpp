#include "algstoch/errors.hpp"
#include "algstoch/tropical.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace algstoch;

namespace {

Rational random_rational(std::mt19937_64& rng) {
  const long num = static_cast<long>(rng() % 2001) - 1000;
  const long den = static_cast<long>(rng() % 97) + 1;
  return Rational(num, den);
}

GradedExpr random_expr(std::mt19937_64& rng) {
  GradedExpr e;
  for (int d = 0; d < 4; ++d) {
    if (rng() % 2) e.coefficients[d] = random_rational(rng);
  }
  if (rng() % 3 == 0) e.dt = random_rational(rng);
  if (rng() % 3 == 0) e.dw = random_rational(rng);
  return e;
}

// Coefficient of x^n in a ∘ b by expanding b^k term by term with plain loops.
std::vector<Rational> compose_oracle(const std::vector<Rational>& a, const std::vector<Rational>& b, std::size_t n) {
  std::vector<Rational> out(n + 1, Rational(0));
  std::vector<Rational> power(n + 1, Rational(0));
  power[0] = 1;
  for (std::size_t k = 0; k < a.size() && k <= n; ++k) {
    for (std::size_t i = 0; i <= n; ++i) out[i] += a[k] * power[i];
    std::vector<Rational> next(n + 1, Rational(0));
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j < b.size() && i + j <= n; ++j) next[i + j] += power[i] * b[j];
    }
    power = next;
  }
  return out;
}

}  // namespace

TEST(Augmentation, SumsCoefficientsAndMarkers) {
  EXPECT_EQ(augmentation(GradedExpr{}), 0);
  EXPECT_EQ(augmentation(GradedExpr::from_coefficients({3, 2})), 5);
  auto [drift, noise] = log_sde_branches(Rational(1, 10), Rational(1, 5), true);
  EXPECT_EQ(augmentation(drift), Rational(1, 10) - Rational(1, 50) + 1);
  EXPECT_EQ(augmentation(noise), Rational(6, 5));
}

TEST(Augmentation, IsAdditive) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 500; ++i) {
    auto a = random_expr(rng);
    auto b = random_expr(rng);
    EXPECT_EQ(augmentation(a + b), augmentation(a) + augmentation(b));
  }
}

TEST(TropMax, LawsAndShiftInvariance) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    auto a = random_expr(rng);
    auto b = random_expr(rng);
    auto c = random_rational(rng);
    EXPECT_EQ(trop_max(a, a), augmentation(a));
    EXPECT_EQ(trop_max(a, b), trop_max(b, a));
    const bool a_wins = augmentation(a) >= augmentation(b);
    EXPECT_EQ(trop_max(a, b), a_wins ? augmentation(a) : augmentation(b));
    EXPECT_EQ(trop_max(a + GradedExpr::constant(c), b + GradedExpr::constant(c)), trop_max(a, b) + c);
  }
}

TEST(LogSde, PaperValues) {
  EXPECT_EQ(tropicalize_log_sde(parse_rational("0.1"), parse_rational("0.2")), parse_rational("0.2"));
  EXPECT_EQ(tropicalize_log_sde(Rational(3, 7), 0), Rational(3, 7));
  const Rational sigma(1, 3);
  const Rational alpha = sigma * sigma / 2 + sigma;
  auto [drift, noise] = log_sde_branches(alpha, sigma, false);
  EXPECT_EQ(augmentation(drift), augmentation(noise));
  EXPECT_EQ(tropicalize_log_sde(alpha, sigma), sigma);
  EXPECT_THROW(tropicalize_log_sde(0, -1), PreconditionError);
}

TEST(LogSde, MarkersShiftByExactlyOne) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Rational alpha = random_rational(rng);
    const Rational sigma = abs(random_rational(rng));
    EXPECT_EQ(tropicalize_log_sde_with_markers(alpha, sigma) - tropicalize_log_sde(alpha, sigma), 1);
  }
}

TEST(Series, ExpCoefficients) {
  EXPECT_EQ(exp_series(0).coefficients, std::vector<Rational>{1});
  EXPECT_EQ(exp_series(3).coefficients, (std::vector<Rational>{1, 1, Rational(1, 2), Rational(1, 6)}));
  EXPECT_EQ(describe(exp_series(2)), "1 + X + 1/2 ⊗²X");
}

TEST(Series, LogInverseRevertsExp) {
  for (std::size_t n = 1; n <= 8; ++n) {
    auto log = log_inverse_series(n);
    EXPECT_EQ(compose(log, reduced(exp_series(n))), identity_series(n)) << n;
    EXPECT_EQ(compose(reduced(exp_series(n)), log), identity_series(n)) << n;
  }
  auto log = log_inverse_series(4);
  EXPECT_EQ(coefficient_strings(log, 1), (std::vector<std::string>{"1", "-1/2", "1/3", "-1/4"}));
  EXPECT_THROW(log_inverse_series(0), PreconditionError);
}

TEST(Series, PaperLogIsNotAnInverse) {
  auto p = paper_log_series(3);
  EXPECT_EQ(coefficient_strings(p, 1), (std::vector<std::string>{"-1", "1/2", "-1/3"}));
  auto round_trip = compose(paper_log_series(6), reduced(exp_series(6)));
  EXPECT_EQ(round_trip[1], -1);
  EXPECT_NE(round_trip, identity_series(6));
}

TEST(Series, CompositionMatchesExpansionOracle) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    TensorSeries a;
    TensorSeries b{{Rational(0)}};
    for (int i = 0; i <= 5; ++i) a.coefficients.push_back(random_rational(rng));
    for (int i = 1; i <= 5; ++i) b.coefficients.push_back(random_rational(rng));
    EXPECT_EQ(compose(a, b).coefficients, compose_oracle(a.coefficients, b.coefficients, 5));
  }
  EXPECT_THROW(compose(exp_series(3), exp_series(3)), PreconditionError);
}

TEST(Series, RevertIsAnInvolution) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    TensorSeries s{{Rational(0)}};
    for (int i = 1; i <= 6; ++i) s.coefficients.push_back(random_rational(rng));
    if (s[1] == 0) s.coefficients[1] = 1;
    EXPECT_EQ(revert(revert(s)), s);
  }
  EXPECT_THROW(revert(exp_series(3)), PreconditionError);
}
