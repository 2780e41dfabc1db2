#include "algstoch/stochastic.hpp"

#include "algstoch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace algstoch {

// ---------------------------------------------------------------- Philox

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
  constexpr std::uint32_t m0 = 0xD2511F53;
  constexpr std::uint32_t m1 = 0xCD9E8D57;
  constexpr std::uint32_t w0 = 0x9E3779B9;
  constexpr std::uint32_t w1 = 0xBB67AE85;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t{m0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{m1} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += w0;
    key[1] += w1;
  }
  return ctr;
}

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, stream_(stream) {}

void NormalStream::refill() {
  const auto out = Philox4x32::block({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                                      static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                                     key_);
  ++block_;
  auto uniform = [](std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  };
  uniforms_ = {uniform(out[0], out[1]), uniform(out[2], out[3])};
  const double radius = std::sqrt(-2.0 * std::log(uniforms_[0]));
  const double angle = 2.0 * std::numbers::pi * uniforms_[1];
  normals_ = {radius * std::cos(angle), radius * std::sin(angle)};
  available_ = 2;
}

double NormalStream::next() {
  if (available_ == 0) refill();
  return normals_[static_cast<std::size_t>(2 - available_--)];
}

double NormalStream::next_uniform() {
  if (available_ == 0) refill();
  return uniforms_[static_cast<std::size_t>(2 - available_--)];
}

// ------------------------------------------------------------- partitions

Partition::Partition(std::vector<double> times) : times_(std::move(times)) {
  if (times_.size() < 2) throw PreconditionError("a partition needs at least one step");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i - 1] < times_[i])) throw PreconditionError("partition times must be strictly increasing");
  }
}

Partition Partition::uniform(double horizon, std::size_t steps) {
  if (!(horizon > 0.0)) throw PreconditionError("horizon must be positive");
  if (steps < 1) throw PreconditionError("at least one step is required");
  std::vector<double> t(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) t[i] = horizon * static_cast<double>(i) / static_cast<double>(steps);
  t.back() = horizon;
  return Partition(std::move(t));
}

double Partition::mesh() const {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < times_.size(); ++i) m = std::max(m, dt(i));
  return m;
}

DiscretePath::DiscretePath(Partition p, std::vector<double> v) : partition(std::move(p)), values(std::move(v)) {
  if (values.size() != partition.times().size()) throw PreconditionError("path length does not match its partition");
}

DiscretePath sample_brownian(double horizon, std::size_t steps, std::uint64_t seed, std::uint64_t stream) {
  auto part = Partition::uniform(horizon, steps);
  NormalStream normals(seed, stream);
  std::vector<double> w(steps + 1, 0.0);
  for (std::size_t i = 0; i < steps; ++i) w[i + 1] = w[i] + std::sqrt(part.dt(i)) * normals.next();
  return DiscretePath(std::move(part), std::move(w));
}

DiscretePath coarsen(const DiscretePath& path, std::size_t factor) {
  if (factor < 1 || path.partition.steps() % factor != 0) {
    throw PreconditionError("coarsening factor must divide the number of steps");
  }
  std::vector<double> t;
  std::vector<double> v;
  for (std::size_t i = 0; i < path.values.size(); i += factor) {
    t.push_back(path.partition.times()[i]);
    v.push_back(path.values[i]);
  }
  return DiscretePath(Partition(std::move(t)), std::move(v));
}

// ---------------------------------------------------------------- δ-calculus

std::vector<double> delta_increments(const DiscretePath& path) {
  std::vector<double> out(path.values.size() - 1);
  for (std::size_t i = 0; i + 1 < path.values.size(); ++i) out[i] = path.values[i + 1] - path.values[i];
  return out;
}

double telescoped_sum(const DiscretePath& path) {
  double total = 0.0;
  for (double d : delta_increments(path)) total += d;
  return total;
}

ProductRuleResult check_product_rule(const DiscretePath& x, const DiscretePath& y) {
  if (!(x.partition == y.partition)) throw PreconditionError("paths live on different partitions");
  ProductRuleResult r;
  for (std::size_t i = 0; i < x.values.size(); ++i) r.scale = std::max(r.scale, std::abs(x.values[i] * y.values[i]));
  for (std::size_t i = 0; i + 1 < x.values.size(); ++i) {
    const double xi = x.values[i];
    const double yi = y.values[i];
    const double dx = x.values[i + 1] - xi;
    const double dy = y.values[i + 1] - yi;
    const double lhs = x.values[i + 1] * y.values[i + 1] - xi * yi;
    const double rhs = xi * dy + dx * yi + dx * dy;
    r.max_residual = std::max(r.max_residual, std::abs(lhs - rhs));
  }
  return r;
}

double quadratic_variation(const DiscretePath& w) {
  double qv = 0.0;
  for (double d : delta_increments(w)) qv += d * d;
  return qv;
}

double cross_variation(const DiscretePath& w) {
  double cv = 0.0;
  const auto inc = delta_increments(w);
  for (std::size_t i = 0; i < inc.size(); ++i) cv += inc[i] * w.partition.dt(i);
  return cv;
}

std::string_view to_string(ItoFunction f) {
  switch (f) {
    case ItoFunction::t:
      return "t";
    case ItoFunction::w2:
      return "w^2";
    case ItoFunction::w3:
      return "w^3";
    case ItoFunction::exp_martingale:
      return "exp(w-t/2)";
  }
  return "unknown";
}

ItoFunction parse_ito_function(std::string_view name) {
  if (name == "t") return ItoFunction::t;
  if (name == "w^2" || name == "w2") return ItoFunction::w2;
  if (name == "w^3" || name == "w3") return ItoFunction::w3;
  if (name == "exp(w-t/2)" || name == "exp") return ItoFunction::exp_martingale;
  throw UnsupportedOperation("no Itô data for f = '" + std::string(name) + "'");
}

namespace {

struct Partials {
  double value, dt, dw, dww;
};

Partials partials(ItoFunction f, double t, double w) {
  switch (f) {
    case ItoFunction::t:
      return {t, 1.0, 0.0, 0.0};
    case ItoFunction::w2:
      return {w * w, 0.0, 2.0 * w, 2.0};
    case ItoFunction::w3:
      return {w * w * w, 0.0, 3.0 * w * w, 6.0 * w};
    case ItoFunction::exp_martingale: {
      const double v = std::exp(w - t / 2.0);
      return {v, -v / 2.0, v, v};
    }
  }
  throw UnsupportedOperation("unsupported Itô function");
}

}  // namespace

double ito_residual(ItoFunction f, const DiscretePath& w, ItoRule rule) {
  const auto& t = w.partition.times();
  double expansion = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const auto p = partials(f, t[i], w.values[i]);
    const double dt = t[i + 1] - t[i];
    const double dw = w.values[i + 1] - w.values[i];
    const double second = rule == ItoRule::pathwise ? dw * dw : dt;
    expansion += p.dt * dt + p.dw * dw + 0.5 * p.dww * second;
  }
  const double change = partials(f, t.back(), w.values.back()).value - partials(f, t.front(), w.values.front()).value;
  return std::abs(change - expansion);
}

// ------------------------------------------------------------------- GBM

DiscretePath simulate_gbm(const GBMParams& p, std::uint64_t path_index) {
  if (!(p.sigma >= 0.0)) throw PreconditionError("volatility must be non-negative");
  if (!(p.x0 > 0.0)) throw PreconditionError("initial value must be positive");
  auto w = sample_brownian(p.horizon, p.steps, p.seed, path_index);
  const double drift = p.alpha - 0.5 * p.sigma * p.sigma;
  const double log_x0 = std::log(p.x0);
  std::vector<double> x(w.values.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::exp(log_x0 + drift * w.partition.times()[i] + p.sigma * w.values[i]);
  }
  x.front() = p.x0;
  return DiscretePath(w.partition, std::move(x));
}

DriftEstimate estimate_log_drift(const std::vector<DiscretePath>& paths) {
  if (paths.size() < 30) throw PreconditionError("drift estimation needs at least 30 paths");
  std::vector<double> r;
  r.reserve(paths.size());
  for (const auto& path : paths) r.push_back(std::log(path.back() / path.front()) / path.partition.horizon());
  DriftEstimate e;
  e.paths = r.size();
  for (double v : r) e.mean += v;
  e.mean /= static_cast<double>(r.size());
  double ss = 0.0;
  for (double v : r) ss += (v - e.mean) * (v - e.mean);
  e.standard_error = std::sqrt(ss / static_cast<double>(r.size() - 1) / static_cast<double>(r.size()));
  return e;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace algstoch
