#pragma once

// Finite categories whose objects are events and whose morphisms carry
// event maps. Composition is an explicit table; pullbacks are declared.

#include "algstoch/check.hpp"
#include "algstoch/event_model.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace algstoch {

struct Morphism {
  std::string id;
  std::size_t source = 0;
  std::size_t target = 0;
  EventMap map;
};

/// Pullback square over the cospan (f, g): P with legs P -> source(f) and
/// P -> source(g).
struct PullbackSquare {
  std::size_t f = 0;
  std::size_t g = 0;
  std::size_t object = 0;
  std::size_t first = 0;
  std::size_t second = 0;
};

class FiniteCategory {
 public:
  class Builder {
   public:
    Builder& add_object(std::string id, EventPtr event);
    /// Without an explicit map the morphism is the inclusion by simplex names.
    Builder& add_morphism(std::string id, const std::string& source, const std::string& target,
                          std::optional<EventMap> map = std::nullopt);
    /// Declares result = second ∘ first.
    Builder& add_composition(const std::string& first, const std::string& second, const std::string& result);
    Builder& add_pullback(const std::string& f, const std::string& g, const std::string& object,
                          const std::string& first_leg, const std::string& second_leg);
    FiniteCategory build() const;

   private:
    struct PendingMorphism {
      std::string id, source, target;
      std::optional<EventMap> map;
    };
    struct PendingComposition {
      std::string first, second, result;
    };
    struct PendingPullback {
      std::string f, g, object, first, second;
    };
    std::vector<std::pair<std::string, EventPtr>> objects_;
    std::vector<PendingMorphism> morphisms_;
    std::vector<PendingComposition> compositions_;
    std::vector<PendingPullback> pullbacks_;
  };

  std::size_t object_count() const noexcept { return objects_.size(); }
  const std::string& object_id(std::size_t obj) const { return objects_.at(obj).first; }
  const EventPtr& event(std::size_t obj) const { return objects_.at(obj).second; }
  std::size_t object_index(std::string_view id) const;
  std::optional<std::size_t> find_object(std::string_view id) const;

  std::size_t morphism_count() const noexcept { return morphisms_.size(); }
  const Morphism& morphism(std::size_t m) const { return morphisms_.at(m); }
  const std::vector<Morphism>& morphisms() const noexcept { return morphisms_; }
  std::size_t morphism_index(std::string_view id) const;
  std::optional<std::size_t> find_morphism(std::string_view id) const;

  std::size_t identity(std::size_t obj) const { return identities_.at(obj); }
  bool is_identity(std::size_t m) const;
  const std::vector<std::size_t>& hom(std::size_t a, std::size_t b) const;
  std::vector<std::size_t> outgoing(std::size_t obj) const;
  std::vector<std::size_t> incoming(std::size_t obj) const;

  /// g ∘ f when (f, g) is composable and the table defines it.
  std::optional<std::size_t> compose(std::size_t g, std::size_t f) const;
  bool is_isomorphism(std::size_t m) const;
  /// Categorical monomorphism, decided by enumeration of parallel pairs.
  bool is_categorical_mono(std::size_t m) const;

  /// Declared square over (f, g), or one forced by an identity leg or by the
  /// kernel pair of a monomorphism. Legs are ordered as (to source(f), to source(g)).
  std::optional<PullbackSquare> pullback(std::size_t f, std::size_t g) const;
  const std::vector<PullbackSquare>& declared_pullbacks() const noexcept { return pullbacks_; }

  /// Full subcategory on `objects`, keeping the table entries and pullback
  /// squares that stay inside it.
  FiniteCategory full_subcategory(const std::vector<std::size_t>& objects) const;

  /// Category laws, pullback squares and map functoriality.
  CheckList validate() const;

  std::string describe_morphism(std::size_t m) const;

 private:
  std::vector<std::pair<std::string, EventPtr>> objects_;
  std::map<std::string, std::size_t, std::less<>> object_index_;
  std::vector<Morphism> morphisms_;
  std::map<std::string, std::size_t, std::less<>> morphism_index_;
  std::vector<std::size_t> identities_;
  std::vector<std::vector<std::vector<std::size_t>>> hom_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> composition_;
  std::vector<PullbackSquare> pullbacks_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pullback_index_;
};

struct ComponentPartition {
  std::vector<std::size_t> component_of;
  std::vector<std::vector<std::size_t>> members;

  std::size_t count() const noexcept { return members.size(); }
  bool same(std::size_t a, std::size_t b) const { return component_of.at(a) == component_of.at(b); }
};

ComponentPartition connected_components(const FiniteCategory& cat);

/// Objects B with hom(A, B) nonempty, in object order; contains A.
std::vector<std::size_t> forward_cone(const FiniteCategory& cat, std::size_t a);
std::vector<std::size_t> forward_cone(const FiniteCategory& cat, std::string_view a);

enum class MinimalityReading {
  /// ψ: ω -> ω′ has no factorization ω -> ω″ -> ω′ with ω″ outside {ω, ω′}.
  factorization,
  /// No ω″ ≠ ω admits ω -> ω″ -> ω.
  literal,
};

/// Non-identity outgoing morphisms of ω that are minimal under `reading`.
std::vector<std::size_t> minimal_outgoing(const FiniteCategory& cat, std::size_t omega,
                                          MinimalityReading reading = MinimalityReading::factorization);

}  // namespace algstoch
