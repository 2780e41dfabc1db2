#pragma once

// The time-independent event category: morphisms A -> B are roofs
// A <- A × ◁(A) -> B over a base morphism, ◁(A) being the forward cone of A.
// Roofs are stored by their base; apexes are materialized on request.

#include "algstoch/category.hpp"
#include "algstoch/check.hpp"
#include "algstoch/sites.hpp"

#include <vector>

namespace algstoch {

struct Roof {
  std::size_t source = 0;
  std::size_t target = 0;
  std::size_t base = 0;

  friend bool operator==(const Roof&, const Roof&) = default;
};

/// A × ◁(A) with its projection to A and the inclusion of A into ◁(A).
struct Apex {
  std::size_t object = 0;
  std::vector<std::size_t> cone;
  EventPtr cone_event;
  EventPtr event;
  EventMap first;
  EventMap cone_inclusion;
};

class RoofCategory {
 public:
  explicit RoofCategory(FiniteCategory base);

  const FiniteCategory& base() const noexcept { return base_; }
  std::size_t object_count() const noexcept { return base_.object_count(); }
  std::size_t roof_count() const noexcept { return base_.morphism_count(); }

  Roof roof(std::size_t morphism) const;
  Roof identity_roof(std::size_t object) const;
  /// r2 after r1. PreconditionError when not composable, ClosureError when the
  /// base composite is missing from the table.
  Roof compose(const Roof& r1, const Roof& r2) const;

  Apex apex(std::size_t object) const;
  /// Leg to the target: map(base) ∘ first.
  EventMap target_leg(const Roof& r, const Apex& apex_of_source) const;

  /// The roofs as an ordinary finite category (morphism "roof(f)" per base f).
  FiniteCategory as_category() const;
  std::string describe(const Roof& r) const;

 private:
  FiniteCategory base_;
};

/// Unit laws, associativity, functoriality of f ↦ roof(f), mediation through
/// the lower apexes, and apex cardinality. Throws ClosureError naming the
/// first composable pair whose composite is missing.
CheckList verify_roof_category(const RoofCategory& rc);

/// Covering roofs are those whose base is a monomorphism of events.
GrothendieckSite build_structural_roof_topology(const RoofCategory& rc);

}  // namespace algstoch
