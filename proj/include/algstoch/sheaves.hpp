#pragma once

// Presheaves with finite section sets on finite sites, the gluing check, the
// q-boundary and difference operators, and transversal cones of the filtered
// sheaf of Brownian motions.

#include "algstoch/category.hpp"
#include "algstoch/check.hpp"
#include "algstoch/filtration.hpp"
#include "algstoch/sites.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace algstoch {

using Value = std::variant<double, std::string, std::vector<double>>;

std::string to_string(const Value& v);
/// a − b for scalars and equal-length tables; UnsupportedOperation otherwise.
Value subtract(const Value& a, const Value& b);

/// Presheaf data keyed by identifiers, independent of any particular category.
/// Restrictions map section indices over the target to section indices over
/// the source. Unlisted restrictions between equal section lists default to
/// the identity table.
struct PresheafData {
  std::string id;
  std::map<std::string, std::vector<Value>> sections;
  std::map<std::string, std::vector<std::size_t>> restrictions;
};

class Presheaf {
 public:
  /// Binds `data` to `cat`; objects absent from `data` are a LookupError.
  /// Identity and functoriality are verified (StructuralError).
  Presheaf(const FiniteCategory& cat, const PresheafData& data);
  /// Same section list everywhere, identity restrictions.
  static Presheaf constant(const FiniteCategory& cat, const std::vector<Value>& values);

  const std::string& id() const noexcept { return id_; }
  const std::vector<Value>& sections(std::size_t object) const { return sections_.at(object); }
  std::size_t restrict(std::size_t morphism, std::size_t section) const;

 private:
  Presheaf() = default;
  void validate(const FiniteCategory& cat) const;

  std::string id_;
  std::vector<std::vector<Value>> sections_;
  std::vector<std::vector<std::size_t>> restrictions_;
};

/// Families of up to this many covering arrows are checked exhaustively;
/// larger ones by singletons and the maximal family.
inline constexpr std::size_t exhaustive_family_limit = 12;

/// For every covering family {ω_i -> ω}: sections over ω correspond bijectively
/// to families agreeing on every available ω_i ×_ω ω_j.
CheckList check_sheaf_condition(const GrothendieckSite& site, const Presheaf& f, const std::string& prefix = {});

Value q_boundary(const Value& at_source, const Value& at_target);
/// F(c′) − F(c) along a morphism c -> c′ with values given per object.
Value q_boundary(const FiniteCategory& cat, const std::vector<Value>& values, std::size_t morphism);

/// X(ω′) − X(ω) along ψ: ω -> ω′, or X(ω′)/X(ω) in quotient mode.
/// PreconditionError unless ψ is a minimal outgoing morphism of ω.
double d_psi(const FiniteCategory& cat, const std::vector<double>& x, std::size_t psi,
             MinimalityReading reading = MinimalityReading::factorization, bool quotient = false);

struct FilteredBrownianSheaf {
  const FilteredSigmaAlgebra* filtration = nullptr;
  double sigma = 1.0;
  double kappa = 3.0;

  /// The constant real sheaf on the level category at a framed point.
  Presheaf level(std::size_t point) const;
};

struct ConeReport {
  CheckRecord record;
  std::size_t samples = 0;
  double containment = 0.0;
  double expected = 0.0;
  double standard_error = 0.0;
  double threshold = 0.0;
  double half_width = 0.0;
};

/// Samples W_t(ω) and W_t′(ω) on `samples` independent paths and counts how
/// often W_t′ lies in the closed cone of half-width κσ√(t′ − t) around W_t.
/// Passes when the fraction reaches (2Φ(κ) − 1) − 3 binomial standard errors.
ConeReport transversal_cone_check(const FilteredBrownianSheaf& w, std::size_t object, const Rational& t,
                                  const Rational& t_prime, std::size_t samples, std::uint64_t seed);

}  // namespace algstoch
