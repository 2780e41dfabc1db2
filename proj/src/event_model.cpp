#include "algstoch/event_model.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

namespace algstoch {

// ---------------------------------------------------------------- AtomSet

AtomSet::AtomSet(std::size_t universe, std::uint64_t bits) : universe_(universe), bits_(bits) {
  if (universe > max_universe) {
    throw PreconditionError("ground set larger than " + std::to_string(max_universe) + " atoms");
  }
  if (universe < max_universe && (bits >> universe) != 0) {
    throw PreconditionError("atom set has members outside its ground set");
  }
}

AtomSet AtomSet::full(std::size_t universe) {
  return AtomSet(universe, universe == max_universe ? ~std::uint64_t{0}
                                                    : (std::uint64_t{1} << universe) - 1);
}

std::size_t AtomSet::size() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }

bool AtomSet::contains(std::size_t atom) const {
  return atom < universe_ && ((bits_ >> atom) & 1U) != 0;
}

AtomSet& AtomSet::insert(std::size_t atom) {
  if (atom >= universe_) throw PreconditionError("atom index outside ground set");
  bits_ |= std::uint64_t{1} << atom;
  return *this;
}

bool AtomSet::subset_of(const AtomSet& other) const {
  return universe_ == other.universe_ && (bits_ & ~other.bits_) == 0;
}

AtomSet AtomSet::complement() const { return AtomSet(universe_, full(universe_).bits_ & ~bits_); }

std::vector<std::size_t> AtomSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < universe_; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

AtomSet operator|(const AtomSet& a, const AtomSet& b) {
  if (a.universe_ != b.universe_) throw PreconditionError("atom sets over different ground sets");
  return AtomSet(a.universe_, a.bits_ | b.bits_);
}

AtomSet operator&(const AtomSet& a, const AtomSet& b) {
  if (a.universe_ != b.universe_) throw PreconditionError("atom sets over different ground sets");
  return AtomSet(a.universe_, a.bits_ & b.bits_);
}

// -------------------------------------------------------------- GroundSet

GroundSet::GroundSet(std::vector<std::string> atoms) : names_(std::move(atoms)) {
  if (names_.size() > AtomSet::max_universe) {
    throw PreconditionError("ground set larger than 64 atoms");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], i).second) {
      throw PreconditionError("duplicate atom '" + names_[i] + "'");
    }
  }
}

std::optional<std::size_t> GroundSet::find(std::string_view atom) const {
  auto it = index_.find(std::string(atom));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

AtomSet GroundSet::subset(const std::vector<std::string>& atoms) const {
  AtomSet out(size());
  for (const auto& a : atoms) {
    auto idx = find(a);
    if (!idx) throw LookupError("unknown atom '" + a + "'");
    out.insert(*idx);
  }
  return out;
}

std::vector<std::string> GroundSet::names_of(const AtomSet& atoms) const {
  std::vector<std::string> out;
  for (auto i : atoms.members()) out.push_back(names_.at(i));
  return out;
}

std::string GroundSet::describe(const AtomSet& atoms) const {
  std::string out = "{";
  bool first = true;
  for (auto i : atoms.members()) {
    if (!first) out += ",";
    out += names_.at(i);
    first = false;
  }
  return out + "}";
}

// -------------------------------------------------------- SimplicialEvent

namespace detail {

struct EventAssembler {
  using Level = SimplicialEvent::Level;

  static SimplicialEvent make(std::vector<Level> levels, AtomSet atoms) {
    SimplicialEvent ev;
    ev.levels_ = std::move(levels);
    ev.atoms_ = atoms;
    ev.index_names();
    ev.validate();
    return ev;
  }

  static std::vector<Level> empty_levels(int d_max) {
    return std::vector<Level>(static_cast<std::size_t>(d_max) + 1);
  }
};

}  // namespace detail

namespace {

using detail::EventAssembler;

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

void check_d_max(int d_max) {
  if (d_max < 0) throw PreconditionError("d_max must be non-negative");
}

}  // namespace

void SimplicialEvent::index_names() {
  for (std::size_t n = 0; n < levels_.size(); ++n) {
    auto& level = levels_[n];
    level.index.clear();
    for (std::size_t s = 0; s < level.names.size(); ++s) {
      if (!level.index.emplace(level.names[s], s).second) {
        throw StructuralError("duplicate " + std::to_string(n) + "-simplex '" + level.names[s] + "'");
      }
    }
  }
}

void SimplicialEvent::validate() const {
  if (levels_.empty()) throw StructuralError("simplicial event without levels");
  const int top = d_max();
  auto where = [this](int n, std::size_t s) {
    return std::to_string(n) + "-simplex '" + levels_[static_cast<std::size_t>(n)].names[s] + "'";
  };
  for (int n = 0; n <= top; ++n) {
    const auto& level = levels_[static_cast<std::size_t>(n)];
    if (level.faces.size() != level.names.size() || level.degeneracies.size() != level.names.size()) {
      throw StructuralError("incomplete face/degeneracy tables at dimension " + std::to_string(n));
    }
    for (std::size_t s = 0; s < level.names.size(); ++s) {
      const std::size_t want_faces = n == 0 ? 0 : static_cast<std::size_t>(n) + 1;
      if (level.faces[s].size() != want_faces) {
        throw StructuralError(where(n, s) + " has " + std::to_string(level.faces[s].size()) +
                              " faces, expected " + std::to_string(want_faces));
      }
      for (auto f : level.faces[s]) {
        if (f >= size(n - 1)) throw StructuralError("face of " + where(n, s) + " does not exist");
      }
      const std::size_t want_degen = n < top ? static_cast<std::size_t>(n) + 1 : 0;
      if (level.degeneracies[s].size() != want_degen) {
        throw StructuralError(where(n, s) + " has " + std::to_string(level.degeneracies[s].size()) +
                              " degeneracies, expected " + std::to_string(want_degen));
      }
      for (auto g : level.degeneracies[s]) {
        if (g >= size(n + 1)) throw StructuralError("degeneracy of " + where(n, s) + " does not exist");
      }
    }
  }

  auto d = [this](int n, std::size_t s, int i) { return levels_[static_cast<std::size_t>(n)].faces[s][static_cast<std::size_t>(i)]; };
  auto sd = [this](int n, std::size_t s, int j) {
    return levels_[static_cast<std::size_t>(n)].degeneracies[s][static_cast<std::size_t>(j)];
  };
  auto fail = [&](const std::string& law, int n, std::size_t s) {
    throw StructuralError("simplicial identity " + law + " fails on " + where(n, s));
  };

  for (int n = 0; n <= top; ++n) {
    for (std::size_t x = 0; x < size(n); ++x) {
      // d_i d_j = d_{j-1} d_i for i < j, on n-simplices with n >= 2
      if (n >= 2) {
        for (int j = 1; j <= n; ++j) {
          for (int i = 0; i < j; ++i) {
            if (d(n - 1, d(n, x, j), i) != d(n - 1, d(n, x, i), j - 1)) {
              fail("d_" + std::to_string(i) + " d_" + std::to_string(j) + " = d_" + std::to_string(j - 1) +
                       " d_" + std::to_string(i),
                   n, x);
            }
          }
        }
      }
      if (n < top) {
        for (int j = 0; j <= n; ++j) {
          const std::size_t y = sd(n, x, j);  // (n+1)-simplex
          for (int i = 0; i <= n + 1; ++i) {
            const std::size_t lhs = d(n + 1, y, i);
            if (i == j || i == j + 1) {
              if (lhs != x) fail("d_i s_j = id", n, x);
            } else if (i < j) {
              // d_i s_j = s_{j-1} d_i
              if (lhs != sd(n - 1, d(n, x, i), j - 1)) fail("d_i s_j = s_{j-1} d_i", n, x);
            } else {
              // i > j + 1: d_i s_j = s_j d_{i-1}
              if (lhs != sd(n - 1, d(n, x, i - 1), j)) fail("d_i s_j = s_j d_{i-1}", n, x);
            }
          }
        }
        if (n + 1 < top) {
          // s_i s_j = s_{j+1} s_i for i <= j
          for (int j = 0; j <= n; ++j) {
            for (int i = 0; i <= j; ++i) {
              if (sd(n + 1, sd(n, x, j), i) != sd(n + 1, sd(n, x, i), j + 1)) {
                fail("s_i s_j = s_{j+1} s_i", n, x);
              }
            }
          }
        }
      }
    }
  }
}

SimplicialEvent SimplicialEvent::from_complex(const std::vector<std::string>& vertices,
                                              const std::vector<std::vector<std::string>>& simplices,
                                              AtomSet atoms, int d_max) {
  check_d_max(d_max);
  std::unordered_map<std::string, std::size_t> vindex;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].empty() || vertices[i].find_first_of(",|:()") != std::string::npos) {
      throw StructuralError("vertex name '" + vertices[i] + "' is empty or contains a reserved character");
    }
    if (!vindex.emplace(vertices[i], i).second) {
      throw StructuralError("duplicate vertex '" + vertices[i] + "'");
    }
  }
  std::vector<std::vector<std::size_t>> supports;
  for (std::size_t v = 0; v < vertices.size(); ++v) supports.push_back({v});
  for (const auto& simplex : simplices) {
    std::vector<std::size_t> support;
    for (const auto& v : simplex) {
      auto it = vindex.find(v);
      if (it == vindex.end()) throw StructuralError("simplex uses undeclared vertex '" + v + "'");
      support.push_back(it->second);
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    if (support.empty()) throw StructuralError("empty simplex in complex");
    supports.push_back(std::move(support));
  }

  using Seq = std::vector<std::size_t>;
  std::vector<std::map<Seq, std::size_t>> seq_index(static_cast<std::size_t>(d_max) + 1);
  auto levels = EventAssembler::empty_levels(d_max);
  for (int n = 0; n <= d_max; ++n) {
    std::set<Seq> seqs;
    for (const auto& support : supports) {
      // non-decreasing sequences of length n+1 over `support`
      Seq pos(static_cast<std::size_t>(n) + 1, 0);
      while (true) {
        Seq seq;
        for (auto p : pos) seq.push_back(support[p]);
        seqs.insert(seq);
        int k = n;
        while (k >= 0 && pos[static_cast<std::size_t>(k)] + 1 == support.size()) --k;
        if (k < 0) break;
        ++pos[static_cast<std::size_t>(k)];
        for (int r = k + 1; r <= n; ++r) pos[static_cast<std::size_t>(r)] = pos[static_cast<std::size_t>(k)];
      }
    }
    auto& level = levels[static_cast<std::size_t>(n)];
    for (const auto& seq : seqs) {
      std::vector<std::string> parts;
      for (auto v : seq) parts.push_back(vertices[v]);
      seq_index[static_cast<std::size_t>(n)].emplace(seq, level.names.size());
      level.names.push_back(join(parts, ","));
    }
  }
  for (int n = 0; n <= d_max; ++n) {
    auto& level = levels[static_cast<std::size_t>(n)];
    level.faces.resize(level.names.size());
    level.degeneracies.resize(level.names.size());
    for (const auto& [seq, s] : seq_index[static_cast<std::size_t>(n)]) {
      if (n > 0) {
        for (int i = 0; i <= n; ++i) {
          Seq face = seq;
          face.erase(face.begin() + i);
          level.faces[s].push_back(seq_index[static_cast<std::size_t>(n) - 1].at(face));
        }
      }
      if (n < d_max) {
        for (int j = 0; j <= n; ++j) {
          Seq deg = seq;
          deg.insert(deg.begin() + j, seq[static_cast<std::size_t>(j)]);
          level.degeneracies[s].push_back(seq_index[static_cast<std::size_t>(n) + 1].at(deg));
        }
      }
    }
  }
  return EventAssembler::make(std::move(levels), atoms);
}

SimplicialEvent SimplicialEvent::from_tables(const SimplicialTables& tables, AtomSet atoms, int d_max) {
  check_d_max(d_max);
  if (tables.levels.size() != static_cast<std::size_t>(d_max) + 1) {
    throw StructuralError("expected " + std::to_string(d_max + 1) + " levels, got " +
                          std::to_string(tables.levels.size()));
  }
  auto levels = EventAssembler::empty_levels(d_max);
  std::vector<std::unordered_map<std::string, std::size_t>> index(levels.size());
  for (std::size_t n = 0; n < levels.size(); ++n) {
    levels[n].names = tables.levels[n];
    for (std::size_t s = 0; s < levels[n].names.size(); ++s) {
      if (!index[n].emplace(levels[n].names[s], s).second) {
        throw StructuralError("duplicate " + std::to_string(n) + "-simplex '" + levels[n].names[s] + "'");
      }
    }
  }
  auto lookup_table = [&](const std::vector<std::map<std::string, std::vector<std::string>>>& table,
                          std::size_t n) -> const std::map<std::string, std::vector<std::string>>* {
    return n < table.size() ? &table[n] : nullptr;
  };
  for (std::size_t n = 0; n < levels.size(); ++n) {
    auto& level = levels[n];
    level.faces.resize(level.names.size());
    level.degeneracies.resize(level.names.size());
    for (std::size_t s = 0; s < level.names.size(); ++s) {
      const auto& nm = level.names[s];
      if (n > 0) {
        const auto* faces = lookup_table(tables.faces, n);
        auto it = faces ? faces->find(nm) : decltype(faces->end()){};
        if (!faces || it == faces->end()) {
          throw StructuralError("missing faces for " + std::to_string(n) + "-simplex '" + nm + "'");
        }
        for (const auto& f : it->second) {
          auto fi = index[n - 1].find(f);
          if (fi == index[n - 1].end()) {
            throw StructuralError("face '" + f + "' of '" + nm + "' is not a " + std::to_string(n - 1) + "-simplex");
          }
          level.faces[s].push_back(fi->second);
        }
      }
      if (n + 1 < levels.size()) {
        const auto* degs = lookup_table(tables.degeneracies, n);
        auto it = degs ? degs->find(nm) : decltype(degs->end()){};
        if (!degs || it == degs->end()) {
          throw StructuralError("missing degeneracies for " + std::to_string(n) + "-simplex '" + nm + "'");
        }
        for (const auto& g : it->second) {
          auto gi = index[n + 1].find(g);
          if (gi == index[n + 1].end()) {
            throw StructuralError("degeneracy '" + g + "' of '" + nm + "' is not a " + std::to_string(n + 1) +
                                  "-simplex");
          }
          level.degeneracies[s].push_back(gi->second);
        }
      }
    }
  }
  return EventAssembler::make(std::move(levels), atoms);
}

SimplicialEvent SimplicialEvent::point(std::string_view vertex, AtomSet atoms, int d_max) {
  return from_complex({std::string(vertex)}, {}, atoms, d_max);
}

SimplicialEvent SimplicialEvent::empty(std::size_t universe, int d_max) {
  return from_complex({}, {}, AtomSet(universe), d_max);
}

std::size_t SimplicialEvent::total_size() const {
  std::size_t total = 0;
  for (const auto& level : levels_) total += level.names.size();
  return total;
}

const std::string& SimplicialEvent::name(int dim, std::size_t simplex) const {
  return levels_.at(static_cast<std::size_t>(dim)).names.at(simplex);
}

std::optional<std::size_t> SimplicialEvent::find(int dim, std::string_view name) const {
  if (dim < 0 || dim > d_max()) return std::nullopt;
  const auto& index = levels_[static_cast<std::size_t>(dim)].index;
  auto it = index.find(std::string(name));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::size_t SimplicialEvent::face(int dim, std::size_t simplex, int i) const {
  return levels_.at(static_cast<std::size_t>(dim)).faces.at(simplex).at(static_cast<std::size_t>(i));
}

std::optional<std::size_t> SimplicialEvent::degeneracy(int dim, std::size_t simplex, int j) const {
  if (dim >= d_max()) return std::nullopt;
  return levels_.at(static_cast<std::size_t>(dim)).degeneracies.at(simplex).at(static_cast<std::size_t>(j));
}

std::vector<std::size_t> SimplicialEvent::vertex_sequence(int dim, std::size_t simplex) const {
  std::vector<std::size_t> out;
  for (int k = 0; k <= dim; ++k) {
    std::size_t x = simplex;
    for (int m = dim; m > k; --m) x = face(m, x, m);
    for (int m = k; m > 0; --m) x = face(m, x, 0);
    out.push_back(x);
  }
  return out;
}

SimplicialTables SimplicialEvent::tables() const {
  SimplicialTables t;
  t.levels.resize(levels_.size());
  t.faces.resize(levels_.size());
  t.degeneracies.resize(levels_.size());
  for (std::size_t n = 0; n < levels_.size(); ++n) {
    const auto& level = levels_[n];
    t.levels[n] = level.names;
    for (std::size_t s = 0; s < level.names.size(); ++s) {
      if (n > 0) {
        auto& row = t.faces[n][level.names[s]];
        for (auto f : level.faces[s]) row.push_back(levels_[n - 1].names[f]);
      }
      if (n + 1 < levels_.size()) {
        auto& row = t.degeneracies[n][level.names[s]];
        for (auto g : level.degeneracies[s]) row.push_back(levels_[n + 1].names[g]);
      }
    }
  }
  return t;
}

bool operator==(const SimplicialEvent& a, const SimplicialEvent& b) {
  if (a.atoms_ != b.atoms_ || a.levels_.size() != b.levels_.size()) return false;
  for (std::size_t n = 0; n < a.levels_.size(); ++n) {
    const auto& la = a.levels_[n];
    const auto& lb = b.levels_[n];
    if (la.names != lb.names || la.faces != lb.faces || la.degeneracies != lb.degeneracies) return false;
  }
  return true;
}

// --------------------------------------------------------------- EventMap

namespace {

bool same_event(const EventPtr& a, const EventPtr& b) { return a == b || (a && b && *a == *b); }

std::vector<std::optional<std::size_t>> inclusion_atoms(const SimplicialEvent& source,
                                                        const SimplicialEvent& target) {
  if (!source.atoms().subset_of(target.atoms())) {
    throw StructuralError("atoms of the source are not contained in the atoms of the target");
  }
  std::vector<std::optional<std::size_t>> out(source.atoms().universe());
  for (auto a : source.atoms().members()) out[a] = a;
  return out;
}

std::vector<std::optional<std::size_t>> explicit_atoms(const SimplicialEvent& source,
                                                       const std::map<std::size_t, std::size_t>& atom_map) {
  std::vector<std::optional<std::size_t>> out(source.atoms().universe());
  for (auto [from, to] : atom_map) {
    if (from >= out.size()) throw StructuralError("atom map entry outside the ground set");
    out[from] = to;
  }
  return out;
}

}  // namespace

void EventMap::validate() const {
  if (!source_ || !target_) throw StructuralError("event map without endpoints");
  const auto& src = *source_;
  const auto& tgt = *target_;
  if (src.d_max() > tgt.d_max()) {
    throw StructuralError("event map from a deeper truncation into a shallower one");
  }
  if (level_maps_.size() != static_cast<std::size_t>(src.d_max()) + 1) {
    throw StructuralError("event map needs one level map per source dimension");
  }
  for (int n = 0; n <= src.d_max(); ++n) {
    const auto& lm = level_maps_[static_cast<std::size_t>(n)];
    if (lm.size() != src.size(n)) {
      throw StructuralError("level map at dimension " + std::to_string(n) + " is not total");
    }
    for (auto y : lm) {
      if (y >= tgt.size(n)) throw StructuralError("level map image outside the target");
    }
  }
  for (int n = 0; n <= src.d_max(); ++n) {
    const auto& lm = level_maps_[static_cast<std::size_t>(n)];
    for (std::size_t x = 0; x < src.size(n); ++x) {
      if (n > 0) {
        for (int i = 0; i <= n; ++i) {
          if (level_maps_[static_cast<std::size_t>(n) - 1][src.face(n, x, i)] != tgt.face(n, lm[x], i)) {
            throw StructuralError("map does not commute with d_" + std::to_string(i) + " on '" + src.name(n, x) + "'");
          }
        }
      }
      if (n < src.d_max()) {
        for (int j = 0; j <= n; ++j) {
          if (level_maps_[static_cast<std::size_t>(n) + 1][*src.degeneracy(n, x, j)] != *tgt.degeneracy(n, lm[x], j)) {
            throw StructuralError("map does not commute with s_" + std::to_string(j) + " on '" + src.name(n, x) + "'");
          }
        }
      }
    }
  }
  const auto universe = src.atoms().universe();
  if (tgt.atoms().universe() != universe || atom_map_.size() != universe) {
    throw StructuralError("event map between different ground sets");
  }
  for (std::size_t a = 0; a < universe; ++a) {
    const bool in_source = src.atoms().contains(a);
    if (in_source != atom_map_[a].has_value()) {
      throw StructuralError("atom map must be defined exactly on the source atoms");
    }
    if (atom_map_[a] && !tgt.atoms().contains(*atom_map_[a])) {
      throw StructuralError("atom map image outside the target atoms");
    }
  }
}

EventMap EventMap::make(EventPtr source, EventPtr target, std::vector<std::vector<std::size_t>> level_maps,
                        std::vector<std::optional<std::size_t>> atom_map) {
  EventMap m;
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  m.level_maps_ = std::move(level_maps);
  m.atom_map_ = std::move(atom_map);
  m.validate();
  return m;
}

EventMap EventMap::identity(EventPtr event) {
  std::vector<std::vector<std::size_t>> maps;
  for (int n = 0; n <= event->d_max(); ++n) {
    std::vector<std::size_t> lm(event->size(n));
    for (std::size_t i = 0; i < lm.size(); ++i) lm[i] = i;
    maps.push_back(std::move(lm));
  }
  auto atoms = inclusion_atoms(*event, *event);
  return make(event, event, std::move(maps), std::move(atoms));
}

EventMap EventMap::inclusion(EventPtr source, EventPtr target) {
  std::vector<std::vector<std::size_t>> maps;
  for (int n = 0; n <= source->d_max(); ++n) {
    std::vector<std::size_t> lm;
    for (std::size_t x = 0; x < source->size(n); ++x) {
      auto y = target->find(n, source->name(n, x));
      if (!y) {
        throw StructuralError("simplex '" + source->name(n, x) + "' of the source is missing from the target");
      }
      lm.push_back(*y);
    }
    maps.push_back(std::move(lm));
  }
  auto atoms = inclusion_atoms(*source, *target);
  return make(std::move(source), std::move(target), std::move(maps), std::move(atoms));
}

EventMap EventMap::from_names(EventPtr source, EventPtr target,
                              const std::vector<std::map<std::string, std::string>>& level_maps,
                              const std::map<std::size_t, std::size_t>& atom_map) {
  if (level_maps.size() != static_cast<std::size_t>(source->d_max()) + 1) {
    throw StructuralError("explicit map needs one identifier table per source dimension");
  }
  std::vector<std::vector<std::size_t>> maps;
  for (int n = 0; n <= source->d_max(); ++n) {
    std::vector<std::size_t> lm;
    for (std::size_t x = 0; x < source->size(n); ++x) {
      const auto& nm = source->name(n, x);
      auto it = level_maps[static_cast<std::size_t>(n)].find(nm);
      if (it == level_maps[static_cast<std::size_t>(n)].end()) {
        throw StructuralError("explicit map has no image for '" + nm + "'");
      }
      auto y = target->find(n, it->second);
      if (!y) throw StructuralError("image '" + it->second + "' is not a simplex of the target");
      lm.push_back(*y);
    }
    maps.push_back(std::move(lm));
  }
  auto atoms = atom_map.empty() ? inclusion_atoms(*source, *target) : explicit_atoms(*source, atom_map);
  return make(std::move(source), std::move(target), std::move(maps), std::move(atoms));
}

EventMap EventMap::from_vertex_map(EventPtr source, EventPtr target,
                                   const std::map<std::string, std::string>& vertex_map,
                                   const std::map<std::size_t, std::size_t>& atom_map) {
  std::vector<std::size_t> vmap;
  for (std::size_t v = 0; v < source->size(0); ++v) {
    auto it = vertex_map.find(source->name(0, v));
    if (it == vertex_map.end()) throw StructuralError("vertex map has no image for '" + source->name(0, v) + "'");
    auto y = target->find(0, it->second);
    if (!y) throw StructuralError("vertex '" + it->second + "' is not in the target");
    vmap.push_back(*y);
  }
  std::vector<std::vector<std::size_t>> maps;
  for (int n = 0; n <= source->d_max(); ++n) {
    std::map<std::vector<std::size_t>, std::size_t> by_vertices;
    for (std::size_t y = 0; y < target->size(n); ++y) {
      if (!by_vertices.emplace(target->vertex_sequence(n, y), y).second) {
        throw StructuralError("target simplices are not determined by their vertices; use an explicit map");
      }
    }
    std::vector<std::size_t> lm;
    for (std::size_t x = 0; x < source->size(n); ++x) {
      auto seq = source->vertex_sequence(n, x);
      for (auto& v : seq) v = vmap[v];
      auto it = by_vertices.find(seq);
      if (it == by_vertices.end()) {
        throw StructuralError("image of '" + source->name(n, x) + "' is not a simplex of the target");
      }
      lm.push_back(it->second);
    }
    maps.push_back(std::move(lm));
  }
  auto atoms = atom_map.empty() ? inclusion_atoms(*source, *target) : explicit_atoms(*source, atom_map);
  return make(std::move(source), std::move(target), std::move(maps), std::move(atoms));
}

std::size_t EventMap::operator()(int dim, std::size_t simplex) const {
  return level_maps_.at(static_cast<std::size_t>(dim)).at(simplex);
}

const std::vector<std::size_t>& EventMap::level_map(int dim) const {
  return level_maps_.at(static_cast<std::size_t>(dim));
}

std::optional<std::size_t> EventMap::atom_image(std::size_t atom) const {
  return atom < atom_map_.size() ? atom_map_[atom] : std::nullopt;
}

bool EventMap::is_atom_inclusion() const {
  for (std::size_t a = 0; a < atom_map_.size(); ++a) {
    if (atom_map_[a] && *atom_map_[a] != a) return false;
  }
  return true;
}

bool operator==(const EventMap& a, const EventMap& b) {
  return same_event(a.source_, b.source_) && same_event(a.target_, b.target_) &&
         a.level_maps_ == b.level_maps_ && a.atom_map_ == b.atom_map_;
}

EventMap compose(const EventMap& g, const EventMap& f) {
  if (!same_event(f.target_ptr(), g.source_ptr())) {
    throw PreconditionError("cannot compose event maps: target of the first is not the source of the second");
  }
  std::vector<std::vector<std::size_t>> maps;
  for (int n = 0; n <= f.source().d_max(); ++n) {
    std::vector<std::size_t> lm;
    for (auto y : f.level_map(n)) lm.push_back(g(n, y));
    maps.push_back(std::move(lm));
  }
  std::vector<std::optional<std::size_t>> atoms(f.atom_map().size());
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    if (auto mid = f.atom_image(a)) atoms[a] = g.atom_image(*mid);
  }
  return EventMap::make(f.source_ptr(), g.target_ptr(), std::move(maps), std::move(atoms));
}

bool is_monomorphism(const EventMap& f) {
  for (int n = 0; n <= f.source().d_max(); ++n) {
    std::vector<bool> seen(f.target().size(n), false);
    for (auto y : f.level_map(n)) {
      if (seen[y]) return false;
      seen[y] = true;
    }
  }
  return true;
}

bool is_isomorphism(const EventMap& f) {
  if (f.source().d_max() != f.target().d_max() || !is_monomorphism(f)) return false;
  for (int n = 0; n <= f.source().d_max(); ++n) {
    if (f.source().size(n) != f.target().size(n)) return false;
  }
  std::vector<bool> hit(f.atom_map().size(), false);
  for (const auto& img : f.atom_map()) {
    if (img) {
      if (hit[*img]) return false;
      hit[*img] = true;
    }
  }
  return f.source().atoms().size() == f.target().atoms().size();
}

std::string pair_name(std::string_view first, std::string_view second) {
  std::string out = "(";
  out += first;
  out += "|";
  out += second;
  out += ")";
  return out;
}

namespace {

/// Builds the levelwise sub-product of A × B on the pairs accepted by `keep`.
template <typename Keep>
ProductResult pair_event(const EventPtr& a, const EventPtr& b, Keep keep) {
  if (a->atoms().universe() != b->atoms().universe()) {
    throw PreconditionError("events over different ground sets");
  }
  const int d = std::min(a->d_max(), b->d_max());
  auto levels = EventAssembler::empty_levels(d);
  std::vector<std::map<std::pair<std::size_t, std::size_t>, std::size_t>> index(levels.size());
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs(levels.size());
  for (int n = 0; n <= d; ++n) {
    auto un = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < a->size(n); ++i) {
      for (std::size_t j = 0; j < b->size(n); ++j) {
        if (!keep(n, i, j)) continue;
        index[un].emplace(std::pair{i, j}, pairs[un].size());
        pairs[un].emplace_back(i, j);
        levels[un].names.push_back(pair_name(a->name(n, i), b->name(n, j)));
      }
    }
  }
  for (int n = 0; n <= d; ++n) {
    auto un = static_cast<std::size_t>(n);
    auto& level = levels[un];
    level.faces.resize(pairs[un].size());
    level.degeneracies.resize(pairs[un].size());
    for (std::size_t s = 0; s < pairs[un].size(); ++s) {
      auto [i, j] = pairs[un][s];
      if (n > 0) {
        for (int k = 0; k <= n; ++k) {
          level.faces[s].push_back(index[un - 1].at({a->face(n, i, k), b->face(n, j, k)}));
        }
      }
      if (n < d) {
        for (int k = 0; k <= n; ++k) {
          level.degeneracies[s].push_back(index[un + 1].at({*a->degeneracy(n, i, k), *b->degeneracy(n, j, k)}));
        }
      }
    }
  }
  const AtomSet atoms = a->atoms() & b->atoms();
  auto event = std::make_shared<const SimplicialEvent>(EventAssembler::make(std::move(levels), atoms));

  std::vector<std::vector<std::size_t>> first(pairs.size());
  std::vector<std::vector<std::size_t>> second(pairs.size());
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    for (auto [i, j] : pairs[n]) {
      first[n].push_back(i);
      second[n].push_back(j);
    }
  }
  std::vector<std::optional<std::size_t>> atom_incl(atoms.universe());
  for (auto x : atoms.members()) atom_incl[x] = x;

  std::optional<std::string> notice;
  if (a->d_max() != b->d_max()) {
    notice = "product truncated at dimension " + std::to_string(d);
  }
  return ProductResult{event, EventMap::make(event, a, std::move(first), atom_incl),
                       EventMap::make(event, b, std::move(second), atom_incl), std::move(notice)};
}

}  // namespace

ProductResult product(const EventPtr& a, const EventPtr& b) {
  return pair_event(a, b, [](int, std::size_t, std::size_t) { return true; });
}

ProductResult fiber_product(const EventMap& f, const EventMap& g) {
  if (!same_event(f.target_ptr(), g.target_ptr())) {
    throw PreconditionError("fiber product needs maps with a common target");
  }
  return pair_event(f.source_ptr(), g.source_ptr(),
                    [&](int n, std::size_t i, std::size_t j) { return f(n, i) == g(n, j); });
}

EventMap pairing(const EventMap& f, const EventMap& g, const EventPtr& product_event) {
  if (!same_event(f.source_ptr(), g.source_ptr())) {
    throw PreconditionError("pairing needs maps with a common source");
  }
  const auto& q = f.source();
  std::vector<std::vector<std::size_t>> maps;
  for (int n = 0; n <= q.d_max(); ++n) {
    std::vector<std::size_t> lm;
    for (std::size_t x = 0; x < q.size(n); ++x) {
      auto name = pair_name(f.target().name(n, f(n, x)), g.target().name(n, g(n, x)));
      auto y = product_event->find(n, name);
      if (!y) throw StructuralError("pair '" + name + "' is not a simplex of the product");
      lm.push_back(*y);
    }
    maps.push_back(std::move(lm));
  }
  std::vector<std::optional<std::size_t>> atoms(q.atoms().universe());
  for (auto a : q.atoms().members()) {
    if (f.atom_image(a) != g.atom_image(a)) {
      throw StructuralError("pairing of maps that disagree on atoms");
    }
    atoms[a] = f.atom_image(a);
  }
  return EventMap::make(f.source_ptr(), product_event, std::move(maps), std::move(atoms));
}

CoproductResult coproduct(const std::vector<std::pair<std::string, EventPtr>>& summands) {
  if (summands.empty()) throw PreconditionError("coproduct of no events");
  int d = summands.front().second->d_max();
  AtomSet atoms(summands.front().second->atoms().universe());
  for (const auto& [label, ev] : summands) {
    d = std::min(d, ev->d_max());
    atoms = atoms | ev->atoms();
  }
  auto levels = EventAssembler::empty_levels(d);
  std::vector<std::vector<std::size_t>> offsets(summands.size(), std::vector<std::size_t>(levels.size()));
  for (int n = 0; n <= d; ++n) {
    auto un = static_cast<std::size_t>(n);
    for (std::size_t k = 0; k < summands.size(); ++k) {
      const auto& [label, ev] = summands[k];
      offsets[k][un] = levels[un].names.size();
      for (std::size_t x = 0; x < ev->size(n); ++x) levels[un].names.push_back(label + ":" + ev->name(n, x));
    }
  }
  for (int n = 0; n <= d; ++n) {
    auto un = static_cast<std::size_t>(n);
    levels[un].faces.resize(levels[un].names.size());
    levels[un].degeneracies.resize(levels[un].names.size());
    for (std::size_t k = 0; k < summands.size(); ++k) {
      const auto& ev = summands[k].second;
      for (std::size_t x = 0; x < ev->size(n); ++x) {
        const auto s = offsets[k][un] + x;
        if (n > 0) {
          for (int i = 0; i <= n; ++i) levels[un].faces[s].push_back(offsets[k][un - 1] + ev->face(n, x, i));
        }
        if (n < d) {
          for (int j = 0; j <= n; ++j) {
            levels[un].degeneracies[s].push_back(offsets[k][un + 1] + *ev->degeneracy(n, x, j));
          }
        }
      }
    }
  }
  auto event = std::make_shared<const SimplicialEvent>(EventAssembler::make(std::move(levels), atoms));
  CoproductResult result{event, {}};
  for (std::size_t k = 0; k < summands.size(); ++k) {
    const auto& ev = summands[k].second;
    if (ev->d_max() != d) {
      throw PreconditionError("coproduct summands must share a truncation depth");
    }
    std::vector<std::vector<std::size_t>> maps;
    for (int n = 0; n <= d; ++n) {
      std::vector<std::size_t> lm;
      for (std::size_t x = 0; x < ev->size(n); ++x) lm.push_back(offsets[k][static_cast<std::size_t>(n)] + x);
      maps.push_back(std::move(lm));
    }
    result.inclusions.push_back(EventMap::make(ev, event, std::move(maps), inclusion_atoms(*ev, *event)));
  }
  return result;
}

}  // namespace algstoch
