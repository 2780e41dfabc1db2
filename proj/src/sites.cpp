#include "algstoch/sites.hpp"

#include <algorithm>

namespace algstoch {

std::string_view to_string(Topology t) {
  switch (t) {
    case Topology::operadic:
      return "operadic";
    case Topology::probability:
      return "probability";
    case Topology::structural:
      return "structural";
  }
  return "unknown";
}

Topology parse_topology(std::string_view name) {
  if (name == "operadic") return Topology::operadic;
  if (name == "probability") return Topology::probability;
  if (name == "structural") return Topology::structural;
  throw PreconditionError("unknown topology '" + std::string(name) + "'");
}

GrothendieckSite::GrothendieckSite(FiniteCategory category, Topology kind, std::vector<bool> covering_arrows,
                                   std::optional<ProbabilityMeasure> measure)
    : category_(std::move(category)), kind_(kind), covering_(std::move(covering_arrows)), measure_(std::move(measure)) {
  if (covering_.size() != category_.morphism_count()) {
    throw PreconditionError("covering predicate must be given for every morphism");
  }
}

bool GrothendieckSite::covers(const std::vector<std::size_t>& family) const {
  if (family.empty()) return false;
  const auto target = category_.morphism(family.front()).target;
  return std::all_of(family.begin(), family.end(), [&](std::size_t m) {
    return category_.morphism(m).target == target && covering_.at(m);
  });
}

std::vector<std::size_t> GrothendieckSite::covering_arrows_into(std::size_t object) const {
  std::vector<std::size_t> out;
  for (auto m : category_.incoming(object)) {
    if (covering_[m]) out.push_back(m);
  }
  return out;
}

std::size_t GrothendieckSite::covering_arrow_count() const {
  return static_cast<std::size_t>(std::count(covering_.begin(), covering_.end(), true));
}

// ---------------------------------------------------------------- builders

GrothendieckSite build_tau_operadic(const FilteredSigmaAlgebra& f, std::size_t point) {
  auto cat = f.level_category(point);
  auto parts = connected_components(cat);
  const auto& global = f.category();
  std::vector<bool> cover(cat.morphism_count(), false);
  for (std::size_t m = 0; m < cat.morphism_count(); ++m) {
    if (cat.is_isomorphism(m)) {
      cover[m] = true;
      continue;
    }
    const auto& mm = cat.morphism(m);
    if (!parts.same(mm.source, mm.target)) continue;
    const auto src = global.object_index(cat.object_id(mm.source));
    const auto tgt = global.object_index(cat.object_id(mm.target));
    for (auto gi : f.generators_available(point)) {
      const auto& g = f.operad()[gi];
      if (g.output == tgt && std::find(g.inputs.begin(), g.inputs.end(), src) != g.inputs.end()) {
        cover[m] = true;
        break;
      }
    }
  }
  return GrothendieckSite(std::move(cat), Topology::operadic, std::move(cover));
}

FilteredSite build_tau_operadic(const FilteredSigmaAlgebra& f) {
  FilteredSite out{&f, {}};
  for (std::size_t p = 0; p < f.index().size(); ++p) out.levels.push_back(build_tau_operadic(f, p));
  return out;
}

GrothendieckSite build_tau_P(const FilteredSigmaAlgebra& f, const ProbabilityMeasure& p, std::size_t point) {
  auto cat = f.level_category(point);
  auto parts = connected_components(cat);
  std::vector<bool> cover(cat.morphism_count(), false);
  for (std::size_t m = 0; m < cat.morphism_count(); ++m) {
    const auto& mm = cat.morphism(m);
    const bool monotone = p.exact(cat.event(mm.source)->atoms()) <= p.exact(cat.event(mm.target)->atoms());
    cover[m] = cat.is_isomorphism(m) || (parts.same(mm.source, mm.target) && monotone);
  }
  return GrothendieckSite(std::move(cat), Topology::probability, std::move(cover), p);
}

FilteredSite build_tau_P(const FilteredSigmaAlgebra& f, const ProbabilityMeasure& p) {
  FilteredSite out{&f, {}};
  for (std::size_t pt = 0; pt < f.index().size(); ++pt) out.levels.push_back(build_tau_P(f, p, pt));
  return out;
}

GrothendieckSite build_tau_structural(const FiniteCategory& cat) {
  std::vector<bool> cover(cat.morphism_count(), false);
  for (std::size_t m = 0; m < cat.morphism_count(); ++m) {
    cover[m] = cat.is_isomorphism(m) || is_monomorphism(cat.morphism(m).map);
  }
  return GrothendieckSite(cat, Topology::structural, std::move(cover));
}

// ------------------------------------------------------------ verification

CheckList verify_grothendieck(const GrothendieckSite& site, const std::string& prefix) {
  CheckList out;
  const auto& cat = site.category();
  const auto& measure = site.measure();
  auto obj = [&](std::size_t o) { return cat.object_id(o); };
  auto mor = [&](std::size_t m) { return cat.morphism(m).id; };
  auto prob = [&](std::size_t o) { return measure->exact(cat.event(o)->atoms()); };

  for (std::size_t m = 0; m < cat.morphism_count(); ++m) {
    if (!cat.is_isomorphism(m)) continue;
    out.push_back(make_record("isomorphism", prefix + "{" + mor(m) + "}", site.covers({m})));
  }

  for (std::size_t target = 0; target < cat.object_count(); ++target) {
    const auto covering = site.covering_arrows_into(target);
    const auto incoming = cat.incoming(target);
    for (auto ci : covering) {
      const auto omega_i = cat.morphism(ci).source;
      for (auto gm : incoming) {
        const auto gamma = cat.morphism(gm).source;
        const std::string inst = prefix + "(" + obj(omega_i) + ", " + obj(gamma) + ") over " + obj(target) +
                                 " via (" + mor(ci) + ", " + mor(gm) + ")";
        auto sq = cat.pullback(ci, gm);
        if (!sq) {
          out.push_back(make_record("base-change", inst, false,
                                    "no pullback for the cospan " + obj(omega_i) + " -> " + obj(target) + " <- " +
                                        obj(gamma)));
          continue;
        }
        const bool ok = site.is_covering_arrow(sq->second);
        out.push_back(make_record("base-change", inst, ok,
                                  ok ? mor(sq->second) + ": " + obj(sq->object) + " -> " + obj(gamma)
                                     : "projection " + mor(sq->second) + " is not a covering arrow"));
        if (measure) {
          const Rational p_pull = prob(sq->object);
          const Rational p_prod = measure->exact(product(cat.event(omega_i), cat.event(gamma)).event->atoms());
          const Rational p_gamma = prob(gamma);
          const bool chain = p_pull <= p_prod && p_prod <= p_gamma;
          out.push_back(make_record("base-change-chain", inst, chain,
                                    to_decimal_string(p_pull) + " <= " + to_decimal_string(p_prod) + " <= " +
                                        to_decimal_string(p_gamma)));
        }
        if (site.kind() == Topology::structural) {
          out.push_back(make_record("base-change-mono", inst, is_monomorphism(cat.morphism(sq->second).map)));
        }
      }
    }
  }

  for (std::size_t target = 0; target < cat.object_count(); ++target) {
    for (auto a : site.covering_arrows_into(target)) {
      const auto omega_i = cat.morphism(a).source;
      for (auto b : site.covering_arrows_into(omega_i)) {
        const auto omega_ij = cat.morphism(b).source;
        const std::string inst = prefix + obj(omega_ij) + " -> " + obj(omega_i) + " -> " + obj(target) + " via (" +
                                 mor(b) + ", " + mor(a) + ")";
        auto c = cat.compose(a, b);
        if (!c) {
          out.push_back(make_record("composition", inst, false, "no composite in the table"));
          continue;
        }
        const bool ok = site.is_covering_arrow(*c);
        out.push_back(make_record("composition", inst, ok,
                                  ok ? mor(*c) : "composite " + mor(*c) + " is not a covering arrow"));
        if (measure) {
          const bool premise = prob(omega_ij) <= prob(omega_i) && prob(omega_i) <= prob(target);
          const bool chain = !premise || prob(omega_ij) <= prob(target);
          out.push_back(make_record("composition-chain", inst, premise && chain,
                                    to_decimal_string(prob(omega_ij)) + " <= " + to_decimal_string(prob(omega_i)) +
                                        " <= " + to_decimal_string(prob(target))));
        }
      }
    }
  }
  return out;
}

CheckList verify_grothendieck(const FilteredSite& site) {
  CheckList out;
  const auto& f = *site.filtration;
  for (std::size_t p = 0; p < site.levels.size(); ++p) {
    append(out, verify_grothendieck(site.levels[p], f.index().label(p) + " "));
  }
  for (std::size_t p = 0; p + 1 < site.levels.size(); ++p) {
    const auto& lo = site.levels[p];
    const auto& hi = site.levels[p + 1];
    std::string witness;
    for (std::size_t m = 0; m < lo.category().morphism_count(); ++m) {
      if (!lo.is_covering_arrow(m)) continue;
      const auto& id = lo.category().morphism(m).id;
      auto there = hi.category().find_morphism(id);
      if (!there || !hi.is_covering_arrow(*there)) witness += (witness.empty() ? "" : ", ") + id;
    }
    out.push_back(make_record("covering-monotone", f.index().label(p) + " <= " + f.index().label(p + 1),
                              witness.empty(), witness.empty() ? "" : "lost covering arrows " + witness));
  }
  return out;
}

}  // namespace algstoch
