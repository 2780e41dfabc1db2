#include "algstoch/category.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace algstoch {

// ---------------------------------------------------------------- Builder

FiniteCategory::Builder& FiniteCategory::Builder::add_object(std::string id, EventPtr event) {
  if (!event) throw StructuralError("object '" + id + "' has no event");
  objects_.emplace_back(std::move(id), std::move(event));
  return *this;
}

FiniteCategory::Builder& FiniteCategory::Builder::add_morphism(std::string id, const std::string& source,
                                                               const std::string& target,
                                                               std::optional<EventMap> map) {
  morphisms_.push_back({std::move(id), source, target, std::move(map)});
  return *this;
}

FiniteCategory::Builder& FiniteCategory::Builder::add_composition(const std::string& first,
                                                                  const std::string& second,
                                                                  const std::string& result) {
  compositions_.push_back({first, second, result});
  return *this;
}

FiniteCategory::Builder& FiniteCategory::Builder::add_pullback(const std::string& f, const std::string& g,
                                                               const std::string& object,
                                                               const std::string& first_leg,
                                                               const std::string& second_leg) {
  pullbacks_.push_back({f, g, object, first_leg, second_leg});
  return *this;
}

FiniteCategory FiniteCategory::Builder::build() const {
  FiniteCategory cat;
  for (const auto& [id, event] : objects_) {
    if (!cat.object_index_.emplace(id, cat.objects_.size()).second) {
      throw StructuralError("duplicate object '" + id + "'");
    }
    cat.objects_.emplace_back(id, event);
  }
  const std::size_t n = cat.objects_.size();
  cat.hom_.assign(n, std::vector<std::vector<std::size_t>>(n));

  auto add = [&cat](std::string id, std::size_t s, std::size_t t, EventMap map) {
    if (!cat.morphism_index_.emplace(id, cat.morphisms_.size()).second) {
      throw StructuralError("duplicate morphism '" + id + "'");
    }
    cat.hom_[s][t].push_back(cat.morphisms_.size());
    cat.morphisms_.push_back(Morphism{std::move(id), s, t, std::move(map)});
    return cat.morphisms_.size() - 1;
  };

  for (std::size_t o = 0; o < n; ++o) {
    cat.identities_.push_back(add("id_" + cat.objects_[o].first, o, o, EventMap::identity(cat.objects_[o].second)));
  }
  for (const auto& pm : morphisms_) {
    auto s = cat.find_object(pm.source);
    auto t = cat.find_object(pm.target);
    if (!s) throw LookupError("morphism '" + pm.id + "' has unknown source '" + pm.source + "'");
    if (!t) throw LookupError("morphism '" + pm.id + "' has unknown target '" + pm.target + "'");
    const auto& se = cat.objects_[*s].second;
    const auto& te = cat.objects_[*t].second;
    EventMap map = pm.map ? *pm.map : EventMap::inclusion(se, te);
    if (map.source_ptr() != se || map.target_ptr() != te) {
      throw StructuralError("map of morphism '" + pm.id + "' does not connect the events of its endpoints");
    }
    add(pm.id, *s, *t, std::move(map));
  }

  for (std::size_t o = 0; o < n; ++o) {
    const auto id = cat.identities_[o];
    for (std::size_t m = 0; m < cat.morphisms_.size(); ++m) {
      if (cat.morphisms_[m].source == o) cat.composition_[{m, id}] = m;
      if (cat.morphisms_[m].target == o) cat.composition_[{id, m}] = m;
    }
  }
  for (const auto& pc : compositions_) {
    const auto f = cat.morphism_index(pc.first);
    const auto g = cat.morphism_index(pc.second);
    const auto h = cat.morphism_index(pc.result);
    const auto& mf = cat.morphisms_[f];
    const auto& mg = cat.morphisms_[g];
    const auto& mh = cat.morphisms_[h];
    if (mf.target != mg.source) {
      throw StructuralError("composition entry " + pc.second + " ∘ " + pc.first + " is not composable");
    }
    if (mh.source != mf.source || mh.target != mg.target) {
      throw StructuralError("composite '" + pc.result + "' has the wrong endpoints for " + pc.second + " ∘ " +
                            pc.first);
    }
    auto [it, inserted] = cat.composition_.emplace(std::pair{g, f}, h);
    if (!inserted && it->second != h) {
      throw StructuralError("conflicting composition entries for " + pc.second + " ∘ " + pc.first);
    }
  }
  // A composable pair whose hom-set has a single element can only compose to it.
  for (std::size_t f = 0; f < cat.morphisms_.size(); ++f) {
    for (std::size_t g = 0; g < cat.morphisms_.size(); ++g) {
      if (cat.morphisms_[f].target != cat.morphisms_[g].source || cat.composition_.count({g, f})) continue;
      const auto& candidates = cat.hom_[cat.morphisms_[f].source][cat.morphisms_[g].target];
      if (candidates.size() == 1) cat.composition_[{g, f}] = candidates.front();
    }
  }

  for (const auto& pp : pullbacks_) {
    PullbackSquare sq{cat.morphism_index(pp.f), cat.morphism_index(pp.g), cat.object_index(pp.object),
                      cat.morphism_index(pp.first), cat.morphism_index(pp.second)};
    const auto& f = cat.morphisms_[sq.f];
    const auto& g = cat.morphisms_[sq.g];
    const auto& p1 = cat.morphisms_[sq.first];
    const auto& p2 = cat.morphisms_[sq.second];
    const std::string name = "(" + pp.f + ", " + pp.g + ")";
    if (f.target != g.target) throw StructuralError("pullback over " + name + " is not over a cospan");
    if (p1.source != sq.object || p2.source != sq.object || p1.target != f.source || p2.target != g.source) {
      throw StructuralError("pullback legs over " + name + " have the wrong endpoints");
    }
    if (!cat.pullback_index_.emplace(std::pair{sq.f, sq.g}, cat.pullbacks_.size()).second) {
      throw StructuralError("duplicate pullback over " + name);
    }
    cat.pullbacks_.push_back(sq);
  }
  return cat;
}

// ---------------------------------------------------------- FiniteCategory

std::optional<std::size_t> FiniteCategory::find_object(std::string_view id) const {
  auto it = object_index_.find(id);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FiniteCategory::object_index(std::string_view id) const {
  if (auto o = find_object(id)) return *o;
  throw LookupError("unknown object '" + std::string(id) + "'");
}

std::optional<std::size_t> FiniteCategory::find_morphism(std::string_view id) const {
  auto it = morphism_index_.find(id);
  if (it == morphism_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FiniteCategory::morphism_index(std::string_view id) const {
  if (auto m = find_morphism(id)) return *m;
  throw LookupError("unknown morphism '" + std::string(id) + "'");
}

bool FiniteCategory::is_identity(std::size_t m) const {
  return identities_.at(morphisms_.at(m).source) == m;
}

const std::vector<std::size_t>& FiniteCategory::hom(std::size_t a, std::size_t b) const {
  return hom_.at(a).at(b);
}

std::vector<std::size_t> FiniteCategory::outgoing(std::size_t obj) const {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < morphisms_.size(); ++m) {
    if (morphisms_[m].source == obj) out.push_back(m);
  }
  return out;
}

std::vector<std::size_t> FiniteCategory::incoming(std::size_t obj) const {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < morphisms_.size(); ++m) {
    if (morphisms_[m].target == obj) out.push_back(m);
  }
  return out;
}

std::optional<std::size_t> FiniteCategory::compose(std::size_t g, std::size_t f) const {
  auto it = composition_.find({g, f});
  if (it == composition_.end()) return std::nullopt;
  return it->second;
}

bool FiniteCategory::is_isomorphism(std::size_t m) const {
  const auto& mm = morphisms_.at(m);
  for (auto inv : hom(mm.target, mm.source)) {
    if (compose(inv, m) == identities_[mm.source] && compose(m, inv) == identities_[mm.target]) return true;
  }
  return false;
}

bool FiniteCategory::is_categorical_mono(std::size_t m) const {
  const auto a = morphisms_.at(m).source;
  for (std::size_t q = 0; q < objects_.size(); ++q) {
    const auto& arrows = hom(q, a);
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      for (std::size_t j = i + 1; j < arrows.size(); ++j) {
        auto u = compose(m, arrows[i]);
        if (u && u == compose(m, arrows[j])) return false;
      }
    }
  }
  return true;
}

std::optional<PullbackSquare> FiniteCategory::pullback(std::size_t f, std::size_t g) const {
  if (auto it = pullback_index_.find({f, g}); it != pullback_index_.end()) return pullbacks_[it->second];
  if (auto it = pullback_index_.find({g, f}); it != pullback_index_.end()) {
    auto sq = pullbacks_[it->second];
    return PullbackSquare{f, g, sq.object, sq.second, sq.first};
  }
  const auto& mf = morphisms_.at(f);
  const auto& mg = morphisms_.at(g);
  if (mf.target != mg.target) return std::nullopt;
  if (is_identity(f)) return PullbackSquare{f, g, mg.source, g, identities_[mg.source]};
  if (is_identity(g)) return PullbackSquare{f, g, mf.source, identities_[mf.source], f};
  if (f == g && is_categorical_mono(f)) {
    return PullbackSquare{f, g, mf.source, identities_[mf.source], identities_[mf.source]};
  }
  return std::nullopt;
}

FiniteCategory FiniteCategory::full_subcategory(const std::vector<std::size_t>& objects) const {
  FiniteCategory sub;
  std::vector<std::optional<std::size_t>> obj_map(objects_.size());
  for (auto o : objects) {
    if (o >= objects_.size()) throw LookupError("object index out of range");
    if (obj_map[o]) continue;
    obj_map[o] = sub.objects_.size();
    sub.object_index_.emplace(objects_[o].first, sub.objects_.size());
    sub.objects_.push_back(objects_[o]);
  }
  const std::size_t n = sub.objects_.size();
  sub.hom_.assign(n, std::vector<std::vector<std::size_t>>(n));
  std::vector<std::optional<std::size_t>> mor_map(morphisms_.size());
  for (std::size_t m = 0; m < morphisms_.size(); ++m) {
    const auto& mm = morphisms_[m];
    if (!obj_map[mm.source] || !obj_map[mm.target]) continue;
    mor_map[m] = sub.morphisms_.size();
    sub.morphism_index_.emplace(mm.id, sub.morphisms_.size());
    sub.hom_[*obj_map[mm.source]][*obj_map[mm.target]].push_back(sub.morphisms_.size());
    sub.morphisms_.push_back(Morphism{mm.id, *obj_map[mm.source], *obj_map[mm.target], mm.map});
  }
  sub.identities_.resize(n);
  for (std::size_t o = 0; o < objects_.size(); ++o) {
    if (obj_map[o]) sub.identities_[*obj_map[o]] = *mor_map[identities_[o]];
  }
  for (const auto& [key, h] : composition_) {
    if (mor_map[key.first] && mor_map[key.second] && mor_map[h]) {
      sub.composition_[{*mor_map[key.first], *mor_map[key.second]}] = *mor_map[h];
    }
  }
  for (const auto& sq : pullbacks_) {
    if (mor_map[sq.f] && mor_map[sq.g] && obj_map[sq.object] && mor_map[sq.first] && mor_map[sq.second]) {
      PullbackSquare s{*mor_map[sq.f], *mor_map[sq.g], *obj_map[sq.object], *mor_map[sq.first],
                       *mor_map[sq.second]};
      sub.pullback_index_.emplace(std::pair{s.f, s.g}, sub.pullbacks_.size());
      sub.pullbacks_.push_back(s);
    }
  }
  return sub;
}

std::string FiniteCategory::describe_morphism(std::size_t m) const {
  const auto& mm = morphisms_.at(m);
  return mm.id + ": " + objects_[mm.source].first + " -> " + objects_[mm.target].first;
}

CheckList FiniteCategory::validate() const {
  CheckList out;
  const auto& ms = morphisms_;
  auto name = [&](std::size_t m) { return ms[m].id; };

  for (std::size_t m = 0; m < ms.size(); ++m) {
    const bool left = compose(identities_[ms[m].target], m) == m;
    const bool right = compose(m, identities_[ms[m].source]) == m;
    out.push_back(make_record("unit-laws", name(m), left && right));
  }
  for (std::size_t f = 0; f < ms.size(); ++f) {
    for (std::size_t g = 0; g < ms.size(); ++g) {
      if (ms[f].target != ms[g].source || is_identity(f) || is_identity(g)) continue;
      auto h = compose(g, f);
      out.push_back(make_record("composition-total", name(g) + " ∘ " + name(f), h.has_value(),
                                h ? "= " + name(*h) : "no composite in the table"));
      if (!h) continue;
      const bool functorial = ms[*h].map == algstoch::compose(ms[g].map, ms[f].map);
      out.push_back(make_record("map-functoriality", name(g) + " ∘ " + name(f), functorial,
                                functorial ? "" : "map of " + name(*h) + " differs from the composite map"));
    }
  }
  for (std::size_t f = 0; f < ms.size(); ++f) {
    if (is_identity(f)) continue;
    for (std::size_t g = 0; g < ms.size(); ++g) {
      if (ms[f].target != ms[g].source || is_identity(g)) continue;
      for (std::size_t h = 0; h < ms.size(); ++h) {
        if (ms[g].target != ms[h].source || is_identity(h)) continue;
        auto gf = compose(g, f);
        auto hg = compose(h, g);
        if (!gf || !hg) continue;
        auto lhs = compose(h, *gf);
        auto rhs = compose(*hg, f);
        const bool ok = lhs && rhs && *lhs == *rhs;
        out.push_back(make_record("associativity", name(h) + " ∘ " + name(g) + " ∘ " + name(f), ok,
                                  ok ? "= " + name(*lhs) : "bracketings disagree"));
      }
    }
  }

  for (const auto& sq : pullbacks_) {
    const std::string inst = "(" + name(sq.f) + ", " + name(sq.g) + ") -> " + objects_[sq.object].first;
    auto top = compose(sq.f, sq.first);
    auto bottom = compose(sq.g, sq.second);
    const bool commutes = top && bottom && *top == *bottom;
    out.push_back(make_record("pullback-commutes", inst, commutes));
    if (!commutes) continue;

    const auto a = ms[sq.f].source;
    const auto b = ms[sq.g].source;
    std::string witness;
    bool universal = true;
    std::size_t cones = 0;
    for (std::size_t q = 0; q < objects_.size() && universal; ++q) {
      for (auto x : hom(q, a)) {
        for (auto y : hom(q, b)) {
          auto fx = compose(sq.f, x);
          if (!fx || fx != compose(sq.g, y)) continue;
          ++cones;
          std::size_t factorizations = 0;
          for (auto u : hom(q, sq.object)) {
            if (compose(sq.first, u) == x && compose(sq.second, u) == y) ++factorizations;
          }
          if (factorizations != 1) {
            universal = false;
            witness = "cone (" + name(x) + ", " + name(y) + ") from " + objects_[q].first + " has " +
                      std::to_string(factorizations) + " factorizations";
          }
        }
      }
    }
    out.push_back(make_record("pullback-universal", inst, universal,
                              universal ? std::to_string(cones) + " cones factor uniquely" : witness));

    auto fp = fiber_product(ms[sq.f].map, ms[sq.g].map);
    auto comparison = pairing(ms[sq.first].map, ms[sq.second].map, fp.event);
    const bool realized = algstoch::is_isomorphism(comparison);
    out.push_back(CheckRecord{"pullback-realization", inst, Status::info,
                              realized ? "matches the simplicial fiber product"
                                       : "differs from the simplicial fiber product"});
  }
  return out;
}

// ------------------------------------------------------------ free functions

ComponentPartition connected_components(const FiniteCategory& cat) {
  const std::size_t n = cat.object_count();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& m : cat.morphisms()) {
    adj[m.source].push_back(m.target);
    adj[m.target].push_back(m.source);
  }
  ComponentPartition out;
  constexpr auto unset = static_cast<std::size_t>(-1);
  out.component_of.assign(n, unset);
  for (std::size_t start = 0; start < n; ++start) {
    if (out.component_of[start] != unset) continue;
    const std::size_t id = out.members.size();
    out.members.emplace_back();
    std::deque<std::size_t> queue{start};
    out.component_of[start] = id;
    while (!queue.empty()) {
      auto o = queue.front();
      queue.pop_front();
      out.members[id].push_back(o);
      for (auto next : adj[o]) {
        if (out.component_of[next] == unset) {
          out.component_of[next] = id;
          queue.push_back(next);
        }
      }
    }
    std::sort(out.members[id].begin(), out.members[id].end());
  }
  return out;
}

std::vector<std::size_t> forward_cone(const FiniteCategory& cat, std::size_t a) {
  if (a >= cat.object_count()) throw LookupError("object index out of range");
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < cat.object_count(); ++b) {
    if (!cat.hom(a, b).empty()) out.push_back(b);
  }
  return out;
}

std::vector<std::size_t> forward_cone(const FiniteCategory& cat, std::string_view a) {
  return forward_cone(cat, cat.object_index(a));
}

std::vector<std::size_t> minimal_outgoing(const FiniteCategory& cat, std::size_t omega,
                                          MinimalityReading reading) {
  if (omega >= cat.object_count()) throw LookupError("object index out of range");
  std::vector<std::size_t> out;
  if (reading == MinimalityReading::literal) {
    for (std::size_t mid = 0; mid < cat.object_count(); ++mid) {
      if (mid != omega && !cat.hom(omega, mid).empty() && !cat.hom(mid, omega).empty()) return out;
    }
  }
  for (auto psi : cat.outgoing(omega)) {
    if (cat.is_identity(psi)) continue;
    const auto target = cat.morphism(psi).target;
    bool minimal = true;
    if (reading == MinimalityReading::factorization) {
      for (std::size_t mid = 0; mid < cat.object_count() && minimal; ++mid) {
        if (mid == omega || mid == target) continue;
        for (auto a : cat.hom(omega, mid)) {
          for (auto b : cat.hom(mid, target)) {
            if (cat.compose(b, a) == psi) minimal = false;
          }
        }
      }
    }
    if (minimal) out.push_back(psi);
  }
  return out;
}

}  // namespace algstoch
