#pragma once

// Grothendieck topologies on finite categories. A topology is given by its
// covering arrows: a family covers its target iff it is nonempty and every
// member is a covering arrow. Isomorphisms are always covering arrows.

#include "algstoch/category.hpp"
#include "algstoch/check.hpp"
#include "algstoch/filtration.hpp"

#include <optional>
#include <string>
#include <vector>

namespace algstoch {

enum class Topology { operadic, probability, structural };

std::string_view to_string(Topology t);
Topology parse_topology(std::string_view name);

class GrothendieckSite {
 public:
  GrothendieckSite(FiniteCategory category, Topology kind, std::vector<bool> covering_arrows,
                   std::optional<ProbabilityMeasure> measure = std::nullopt);

  const FiniteCategory& category() const noexcept { return category_; }
  Topology kind() const noexcept { return kind_; }
  bool is_covering_arrow(std::size_t m) const { return covering_.at(m); }
  /// Nonempty, common target, every member a covering arrow.
  bool covers(const std::vector<std::size_t>& family) const;
  std::vector<std::size_t> covering_arrows_into(std::size_t object) const;
  std::size_t covering_arrow_count() const;
  const std::optional<ProbabilityMeasure>& measure() const noexcept { return measure_; }

 private:
  FiniteCategory category_;
  Topology kind_;
  std::vector<bool> covering_;
  std::optional<ProbabilityMeasure> measure_;
};

/// One site per framed point of a filtration.
struct FilteredSite {
  const FilteredSigmaAlgebra* filtration = nullptr;
  std::vector<GrothendieckSite> levels;
};

/// ω′ -> ω covers at t when both lie in one component of the level category
/// and an available generator has ω′ among its inputs and ω as output.
GrothendieckSite build_tau_operadic(const FilteredSigmaAlgebra& f, std::size_t point);
FilteredSite build_tau_operadic(const FilteredSigmaAlgebra& f);

/// ω′ -> ω covers at t when both lie in one component and P(ω′) <= P(ω).
GrothendieckSite build_tau_P(const FilteredSigmaAlgebra& f, const ProbabilityMeasure& p, std::size_t point);
FilteredSite build_tau_P(const FilteredSigmaAlgebra& f, const ProbabilityMeasure& p);

/// Covering arrows are the morphisms whose event map is a monomorphism.
GrothendieckSite build_tau_structural(const FiniteCategory& cat);

/// Isomorphism, base-change and composition axioms over every instance.
/// Probability sites also assert the measure inequality chains; structural
/// sites assert that pulled-back legs are monomorphisms.
CheckList verify_grothendieck(const GrothendieckSite& site, const std::string& prefix = {});

/// Every level, plus monotonicity of covering arrows along the index.
CheckList verify_grothendieck(const FilteredSite& site);

}  // namespace algstoch
