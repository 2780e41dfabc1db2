#include "algstoch/tropical.hpp"

#include "algstoch/errors.hpp"

#include <algorithm>

namespace algstoch {

GradedExpr GradedExpr::constant(const Rational& c) {
  GradedExpr e;
  if (c != 0) e.coefficients[0] = c;
  return e;
}

GradedExpr GradedExpr::from_coefficients(const std::vector<Rational>& by_degree) {
  GradedExpr e;
  for (std::size_t i = 0; i < by_degree.size(); ++i) {
    if (by_degree[i] != 0) e.coefficients[static_cast<int>(i)] = by_degree[i];
  }
  return e;
}

GradedExpr& GradedExpr::operator+=(const GradedExpr& other) {
  for (const auto& [deg, c] : other.coefficients) {
    auto& slot = coefficients[deg];
    slot += c;
    if (slot == 0) coefficients.erase(deg);
  }
  dt += other.dt;
  dw += other.dw;
  return *this;
}

Rational augmentation(const GradedExpr& e) {
  Rational total = e.dt + e.dw;
  for (const auto& [deg, c] : e.coefficients) total += c;
  return total;
}

Rational trop_max(const GradedExpr& a, const GradedExpr& b) { return std::max(augmentation(a), augmentation(b)); }

std::pair<GradedExpr, GradedExpr> log_sde_branches(const Rational& alpha, const Rational& sigma, bool with_markers) {
  if (sigma < 0) throw PreconditionError("volatility must be non-negative");
  auto drift = GradedExpr::constant(alpha - sigma * sigma / 2);
  auto noise = GradedExpr::constant(sigma);
  if (with_markers) {
    drift.dt = 1;
    noise.dw = 1;
  }
  return {drift, noise};
}

Rational tropicalize_log_sde(const Rational& alpha, const Rational& sigma) {
  auto [drift, noise] = log_sde_branches(alpha, sigma, false);
  return trop_max(drift, noise);
}

Rational tropicalize_log_sde_with_markers(const Rational& alpha, const Rational& sigma) {
  auto [drift, noise] = log_sde_branches(alpha, sigma, true);
  return trop_max(drift, noise);
}

// ----------------------------------------------------------------- series

TensorSeries exp_series(std::size_t order) {
  TensorSeries s;
  Rational c = 1;
  for (std::size_t n = 0; n <= order; ++n) {
    if (n > 0) c /= static_cast<long>(n);
    s.coefficients.push_back(c);
  }
  return s;
}

TensorSeries identity_series(std::size_t order) {
  TensorSeries s{std::vector<Rational>(order + 1, Rational(0))};
  if (order >= 1) s.coefficients[1] = 1;
  return s;
}

TensorSeries log_inverse_series(std::size_t order) {
  if (order < 1) throw PreconditionError("log series needs order at least 1");
  return revert(reduced(exp_series(order)));
}

TensorSeries paper_log_series(std::size_t order) {
  if (order < 1) throw PreconditionError("log series needs order at least 1");
  TensorSeries s{std::vector<Rational>(order + 1, Rational(0))};
  for (std::size_t n = 1; n <= order; ++n) {
    s.coefficients[n] = Rational(n % 2 == 0 ? 1 : -1, static_cast<long>(n));
  }
  return s;
}

TensorSeries reduced(const TensorSeries& s) {
  TensorSeries out = s;
  if (!out.coefficients.empty()) out.coefficients[0] = 0;
  return out;
}

TensorSeries multiply(const TensorSeries& a, const TensorSeries& b, std::size_t order) {
  TensorSeries out{std::vector<Rational>(order + 1, Rational(0))};
  for (std::size_t i = 0; i < a.coefficients.size() && i <= order; ++i) {
    if (a.coefficients[i] == 0) continue;
    for (std::size_t j = 0; j < b.coefficients.size() && i + j <= order; ++j) {
      out.coefficients[i + j] += a.coefficients[i] * b.coefficients[j];
    }
  }
  return out;
}

TensorSeries compose(const TensorSeries& outer, const TensorSeries& inner) {
  if (inner[0] != 0) throw PreconditionError("inner series must have zero constant term");
  const std::size_t order = std::min(outer.order(), inner.order());
  TensorSeries out{std::vector<Rational>(order + 1, Rational(0))};
  TensorSeries power{std::vector<Rational>(order + 1, Rational(0))};
  power.coefficients[0] = 1;
  for (std::size_t n = 0; n <= order; ++n) {
    for (std::size_t k = 0; k <= order; ++k) out.coefficients[k] += outer[n] * power[k];
    power = multiply(power, inner, order);
  }
  return out;
}

TensorSeries revert(const TensorSeries& s) {
  if (s[0] != 0 || s[1] == 0) throw PreconditionError("series is not compositionally invertible");
  const std::size_t order = s.order();
  // Solve r coefficient by coefficient so that s ∘ r = X.
  TensorSeries r{std::vector<Rational>(order + 1, Rational(0))};
  r.coefficients[1] = 1 / s[1];
  for (std::size_t n = 2; n <= order; ++n) {
    const auto partial = compose(s, TensorSeries{std::vector<Rational>(r.coefficients.begin(),
                                                                       r.coefficients.begin() + static_cast<long>(n) + 1)});
    r.coefficients[n] = -partial[n] / s[1];
  }
  return r;
}

std::vector<std::string> coefficient_strings(const TensorSeries& s, std::size_t first_degree) {
  std::vector<std::string> out;
  for (std::size_t n = first_degree; n < s.coefficients.size(); ++n) out.push_back(to_string(s.coefficients[n]));
  return out;
}

std::string describe(const TensorSeries& s) {
  static const char* const superscripts[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string out;
  for (std::size_t n = 0; n < s.coefficients.size(); ++n) {
    const auto& c = s.coefficients[n];
    if (c == 0) continue;
    std::string term;
    if (n == 0) {
      term = to_string(c);
    } else {
      std::string power;
      for (char d : std::to_string(n)) power += superscripts[d - '0'];
      const std::string gen = n == 1 ? "X" : "⊗" + power + "X";
      term = c == 1 ? gen : c == -1 ? "-" + gen : to_string(c) + " " + gen;
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace algstoch
