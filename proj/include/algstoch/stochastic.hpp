#pragma once

// Discrete Brownian paths on partitions and the pathwise δ-calculus checks.

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace algstoch {

/// Philox4x32-10 counter-based generator.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter counter, Key key);
};

/// Standard normals for one (seed, stream) pair. Block b of the stream is
/// Philox at counter (b_lo, b_hi, stream_lo, stream_hi) with the seed as key;
/// its four words give two 53-bit uniforms in (0, 1), turned into two normals
/// by Box–Muller (cos branch first).
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream);

  double next();
  double next_uniform();

 private:
  void refill();

  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<double, 2> normals_{};
  std::array<double, 2> uniforms_{};
  int available_ = 0;
};

class Partition {
 public:
  explicit Partition(std::vector<double> times);
  /// n equal steps over [0, T]; the last time is exactly T.
  static Partition uniform(double horizon, std::size_t steps);

  const std::vector<double>& times() const noexcept { return times_; }
  std::size_t steps() const noexcept { return times_.size() - 1; }
  double mesh() const;
  double horizon() const noexcept { return times_.back(); }
  double dt(std::size_t i) const { return times_.at(i + 1) - times_.at(i); }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<double> times_;
};

struct DiscretePath {
  Partition partition;
  std::vector<double> values;

  DiscretePath(Partition p, std::vector<double> v);
  double front() const { return values.front(); }
  double back() const { return values.back(); }
};

DiscretePath sample_brownian(double horizon, std::size_t steps, std::uint64_t seed, std::uint64_t stream = 0);

/// Keeps every `factor`-th point; the coarse path shares the fine path's randomness.
DiscretePath coarsen(const DiscretePath& path, std::size_t factor);

std::vector<double> delta_increments(const DiscretePath& path);
double telescoped_sum(const DiscretePath& path);

struct ProductRuleResult {
  double max_residual = 0.0;
  /// max |X_i Y_i| over the grid, the natural size of the residual.
  double scale = 0.0;
};

/// Per step Δ(XY) − (X_i ΔY + ΔX Y_i + ΔX ΔY).
ProductRuleResult check_product_rule(const DiscretePath& x, const DiscretePath& y);

double quadratic_variation(const DiscretePath& w);
/// Σ Δ_i W · Δ_i t.
double cross_variation(const DiscretePath& w);

enum class ItoFunction { t, w2, w3, exp_martingale };
/// How the second-order term is evaluated: (Δ_i W)² on the path, or Δ_i t.
enum class ItoRule { pathwise, quadratic_variation };

std::string_view to_string(ItoFunction f);
ItoFunction parse_ito_function(std::string_view name);

/// |f(T, W_T) − f(0, W_0) − Σ [∂_t f Δt + ∂_w f ΔW + ½ ∂_w² f (second-order term)]|
/// with partials at the left endpoint.
double ito_residual(ItoFunction f, const DiscretePath& w, ItoRule rule = ItoRule::pathwise);

struct GBMParams {
  double alpha = 0.1;
  double sigma = 0.2;
  double x0 = 1.0;
  double horizon = 1.0;
  std::size_t steps = 100;
  std::uint64_t seed = 0;
};

/// Exact lognormal scheme log X_i = log X0 + (α − σ²/2) t_i + σ W_i.
DiscretePath simulate_gbm(const GBMParams& p, std::uint64_t path_index = 0);

struct DriftEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t paths = 0;
};

/// Mean and standard error of log(X_T / X_0) / T; needs at least 30 paths.
DriftEstimate estimate_log_drift(const std::vector<DiscretePath>& paths);

/// Standard normal CDF.
double normal_cdf(double x);

}  // namespace algstoch
