#pragma once

// Events as finite truncated simplicial sets decorated with a subset of a
// finite sample ground set. The simplicial side carries the structural
// morphisms; the atom side is what measures see.

#include "algstoch/errors.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace algstoch {

inline constexpr int default_d_max = 2;

namespace detail {
struct EventAssembler;
}

/// Subset of a ground set of at most 64 atoms, addressed by atom index.
class AtomSet {
 public:
  static constexpr std::size_t max_universe = 64;

  AtomSet() = default;
  explicit AtomSet(std::size_t universe, std::uint64_t bits = 0);

  static AtomSet full(std::size_t universe);

  std::size_t universe() const noexcept { return universe_; }
  std::uint64_t bits() const noexcept { return bits_; }
  bool empty() const noexcept { return bits_ == 0; }
  std::size_t size() const noexcept;
  bool contains(std::size_t atom) const;
  AtomSet& insert(std::size_t atom);
  bool subset_of(const AtomSet& other) const;
  AtomSet complement() const;
  std::vector<std::size_t> members() const;

  friend AtomSet operator|(const AtomSet& a, const AtomSet& b);
  friend AtomSet operator&(const AtomSet& a, const AtomSet& b);
  friend bool operator==(const AtomSet&, const AtomSet&) = default;
  friend auto operator<=>(const AtomSet&, const AtomSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::uint64_t bits_ = 0;
};

/// Named atoms of the global sample space.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> atoms);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t atom) const { return names_.at(atom); }
  std::optional<std::size_t> find(std::string_view atom) const;

  AtomSet subset(const std::vector<std::string>& atoms) const;
  AtomSet full() const { return AtomSet::full(size()); }
  std::vector<std::string> names_of(const AtomSet& atoms) const;
  /// "{a,b}" in ground-set order.
  std::string describe(const AtomSet& atoms) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Face and degeneracy tables keyed by simplex identifier, per dimension.
/// `faces[n]` is empty for n = 0; `degeneracies[d_max]` is empty.
struct SimplicialTables {
  std::vector<std::vector<std::string>> levels;
  std::vector<std::map<std::string, std::vector<std::string>>> faces;
  std::vector<std::map<std::string, std::vector<std::string>>> degeneracies;
};

class SimplicialEvent {
 public:
  /// Simplicial set of an ordered simplicial complex: n-simplices are the
  /// non-decreasing vertex sequences whose support lies in a declared
  /// simplex. Identifiers are the comma-joined vertex names.
  static SimplicialEvent from_complex(const std::vector<std::string>& vertices,
                                      const std::vector<std::vector<std::string>>& simplices,
                                      AtomSet atoms, int d_max = default_d_max);

  /// Explicit tables; every simplicial identity is verified.
  static SimplicialEvent from_tables(const SimplicialTables& tables, AtomSet atoms, int d_max);

  static SimplicialEvent point(std::string_view vertex, AtomSet atoms, int d_max = default_d_max);
  static SimplicialEvent empty(std::size_t universe, int d_max = default_d_max);

  int d_max() const noexcept { return static_cast<int>(levels_.size()) - 1; }
  const AtomSet& atoms() const noexcept { return atoms_; }

  std::size_t size(int dim) const { return levels_.at(static_cast<std::size_t>(dim)).names.size(); }
  std::size_t total_size() const;
  const std::string& name(int dim, std::size_t simplex) const;
  std::optional<std::size_t> find(int dim, std::string_view name) const;

  std::size_t face(int dim, std::size_t simplex, int i) const;
  /// Absent at the top truncation level.
  std::optional<std::size_t> degeneracy(int dim, std::size_t simplex, int j) const;

  /// Vertices (0-simplices) v_0..v_n of an n-simplex, obtained by iterated faces.
  std::vector<std::size_t> vertex_sequence(int dim, std::size_t simplex) const;

  /// Serializable form of the face/degeneracy data.
  SimplicialTables tables() const;

  friend bool operator==(const SimplicialEvent& a, const SimplicialEvent& b);

 private:
  struct Level {
    std::vector<std::string> names;
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::vector<std::size_t>> faces;
    std::vector<std::vector<std::size_t>> degeneracies;
  };

  SimplicialEvent() = default;
  void index_names();
  void validate() const;

  std::vector<Level> levels_;
  AtomSet atoms_;

  friend struct detail::EventAssembler;
};

using EventPtr = std::shared_ptr<const SimplicialEvent>;

/// Simplicial map decorated with a function on atoms. The atom function is
/// defined exactly on atoms(source) and lands in atoms(target); an inclusion
/// is the identity atom function.
class EventMap {
 public:
  static EventMap make(EventPtr source, EventPtr target, std::vector<std::vector<std::size_t>> level_maps,
                       std::vector<std::optional<std::size_t>> atom_map);

  static EventMap identity(EventPtr event);
  /// Sends every simplex to the identically named simplex of `target`.
  static EventMap inclusion(EventPtr source, EventPtr target);
  /// Explicit per-level identifier maps; `atom_map` empty means inclusion.
  static EventMap from_names(EventPtr source, EventPtr target,
                             const std::vector<std::map<std::string, std::string>>& level_maps,
                             const std::map<std::size_t, std::size_t>& atom_map = {});
  /// Extends a vertex assignment to all simplices; needs a target whose
  /// simplices are determined by their vertex sequences.
  static EventMap from_vertex_map(EventPtr source, EventPtr target,
                                  const std::map<std::string, std::string>& vertex_map,
                                  const std::map<std::size_t, std::size_t>& atom_map = {});

  const SimplicialEvent& source() const noexcept { return *source_; }
  const SimplicialEvent& target() const noexcept { return *target_; }
  const EventPtr& source_ptr() const noexcept { return source_; }
  const EventPtr& target_ptr() const noexcept { return target_; }

  std::size_t operator()(int dim, std::size_t simplex) const;
  const std::vector<std::size_t>& level_map(int dim) const;
  std::optional<std::size_t> atom_image(std::size_t atom) const;
  const std::vector<std::optional<std::size_t>>& atom_map() const noexcept { return atom_map_; }
  bool is_atom_inclusion() const;

  friend bool operator==(const EventMap& a, const EventMap& b);

 private:
  EventMap() = default;
  void validate() const;

  EventPtr source_;
  EventPtr target_;
  std::vector<std::vector<std::size_t>> level_maps_;
  std::vector<std::optional<std::size_t>> atom_map_;
};

/// g ∘ f. Throws PreconditionError when target(f) differs from source(g).
EventMap compose(const EventMap& g, const EventMap& f);

bool is_monomorphism(const EventMap& f);

/// Identifier of the pair simplex (a, b) in products and fiber products.
std::string pair_name(std::string_view first, std::string_view second);

struct ProductResult {
  EventPtr event;
  EventMap first;
  EventMap second;
  /// Set when the factors had different truncation depths.
  std::optional<std::string> truncation_notice;
};

/// Levelwise cartesian product; atoms are the intersection.
ProductResult product(const EventPtr& a, const EventPtr& b);

/// Levelwise pullback {(a, b) | f(a) = g(b)} with its two projections.
ProductResult fiber_product(const EventMap& f, const EventMap& g);

/// Universal map q ↦ (f(q), g(q)) into a product or fiber product built from
/// the targets of f and g.
EventMap pairing(const EventMap& f, const EventMap& g, const EventPtr& product_event);

struct CoproductResult {
  EventPtr event;
  std::vector<EventMap> inclusions;
};

/// Disjoint union; simplex identifiers are prefixed with "label:".
CoproductResult coproduct(const std::vector<std::pair<std::string, EventPtr>>& summands);

/// Levelwise bijection check: the candidate comparison map is an isomorphism.
bool is_isomorphism(const EventMap& f);

}  // namespace algstoch
