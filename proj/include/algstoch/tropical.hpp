#pragma once

// Graded expressions with the augmentation ε, the tropical max, and truncated
// exp/log series on a formal tensor generator.

#include "algstoch/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace algstoch {

/// Σ α_i ν^i plus coefficients on the formal degree-1 markers dt and δW.
struct GradedExpr {
  std::map<int, Rational> coefficients;
  Rational dt = 0;
  Rational dw = 0;

  static GradedExpr constant(const Rational& c);
  static GradedExpr from_coefficients(const std::vector<Rational>& by_degree);

  GradedExpr& operator+=(const GradedExpr& other);
  friend GradedExpr operator+(GradedExpr a, const GradedExpr& b) { return a += b; }
  friend bool operator==(const GradedExpr&, const GradedExpr&) = default;
};

/// ε(e): the sum of all coefficients, each marker evaluating to 1.
Rational augmentation(const GradedExpr& e);
Rational trop_max(const GradedExpr& a, const GradedExpr& b);

/// max(α − σ²/2, σ). PreconditionError when σ < 0.
Rational tropicalize_log_sde(const Rational& alpha, const Rational& sigma);
/// Same evaluation with the drift carrying dt and the noise carrying δW:
/// max(α − σ²/2 + 1, σ + 1).
Rational tropicalize_log_sde_with_markers(const Rational& alpha, const Rational& sigma);
/// The two branch expressions (α − σ²/2) + dt and σ + δW.
std::pair<GradedExpr, GradedExpr> log_sde_branches(const Rational& alpha, const Rational& sigma, bool with_markers);

/// Coefficients c_n of Σ c_n ⊗ⁿX for n = 0..order.
struct TensorSeries {
  std::vector<Rational> coefficients;

  std::size_t order() const noexcept { return coefficients.empty() ? 0 : coefficients.size() - 1; }
  Rational operator[](std::size_t n) const { return n < coefficients.size() ? coefficients[n] : Rational(0); }
  friend bool operator==(const TensorSeries&, const TensorSeries&) = default;
};

TensorSeries exp_series(std::size_t order);
/// Compositional inverse of exp − 1, i.e. log(1 + X). PreconditionError for order 0.
TensorSeries log_inverse_series(std::size_t order);
/// Σ_{n≥1} (−1)ⁿ/n ⊗ⁿX as written, with zero constant term.
TensorSeries paper_log_series(std::size_t order);
TensorSeries identity_series(std::size_t order);

/// The series without its constant term.
TensorSeries reduced(const TensorSeries& s);
TensorSeries multiply(const TensorSeries& a, const TensorSeries& b, std::size_t order);
/// outer ∘ inner truncated at the smaller order; inner must have zero constant term.
TensorSeries compose(const TensorSeries& outer, const TensorSeries& inner);
/// Compositional inverse; needs zero constant and invertible linear term.
TensorSeries revert(const TensorSeries& s);

/// Coefficients from `first_degree` on as exact strings.
std::vector<std::string> coefficient_strings(const TensorSeries& s, std::size_t first_degree = 0);
/// "1 + X + 1/2 ⊗²X + ..." with zero terms omitted.
std::string describe(const TensorSeries& s);

}  // namespace algstoch
