#include "algstoch/roof_category.hpp"

namespace algstoch {

namespace {

std::string roof_id(const FiniteCategory& cat, std::size_t m) {
  return cat.is_identity(m) ? cat.morphism(m).id : "roof(" + cat.morphism(m).id + ")";
}

}  // namespace

RoofCategory::RoofCategory(FiniteCategory base) : base_(std::move(base)) {}

Roof RoofCategory::roof(std::size_t morphism) const {
  const auto& m = base_.morphism(morphism);
  return Roof{m.source, m.target, morphism};
}

Roof RoofCategory::identity_roof(std::size_t object) const { return roof(base_.identity(object)); }

Roof RoofCategory::compose(const Roof& r1, const Roof& r2) const {
  if (r1.target != r2.source) {
    throw PreconditionError("roofs " + describe(r1) + " and " + describe(r2) + " are not composable");
  }
  auto base = base_.compose(r2.base, r1.base);
  if (!base) {
    throw ClosureError("no composite for the pair (" + base_.morphism(r1.base).id + ", " +
                       base_.morphism(r2.base).id + ")");
  }
  return Roof{r1.source, r2.target, *base};
}

Apex RoofCategory::apex(std::size_t object) const {
  auto cone = forward_cone(base_, object);
  std::vector<std::pair<std::string, EventPtr>> summands;
  std::size_t own = 0;
  for (std::size_t i = 0; i < cone.size(); ++i) {
    if (cone[i] == object) own = i;
    summands.emplace_back(base_.object_id(cone[i]), base_.event(cone[i]));
  }
  auto co = coproduct(summands);
  auto prod = product(base_.event(object), co.event);
  return Apex{object, cone, co.event, prod.event, prod.first, co.inclusions[own]};
}

EventMap RoofCategory::target_leg(const Roof& r, const Apex& apex_of_source) const {
  return algstoch::compose(base_.morphism(r.base).map, apex_of_source.first);
}

std::string RoofCategory::describe(const Roof& r) const {
  return roof_id(base_, r.base) + ": " + base_.object_id(r.source) + " -> " + base_.object_id(r.target);
}

FiniteCategory RoofCategory::as_category() const {
  FiniteCategory::Builder b;
  for (std::size_t o = 0; o < base_.object_count(); ++o) b.add_object(base_.object_id(o), base_.event(o));
  for (std::size_t m = 0; m < base_.morphism_count(); ++m) {
    if (base_.is_identity(m)) continue;
    const auto& mm = base_.morphism(m);
    b.add_morphism(roof_id(base_, m), base_.object_id(mm.source), base_.object_id(mm.target), mm.map);
  }
  for (std::size_t f = 0; f < base_.morphism_count(); ++f) {
    for (std::size_t g = 0; g < base_.morphism_count(); ++g) {
      if (base_.is_identity(f) || base_.is_identity(g)) continue;
      if (auto h = base_.compose(g, f)) b.add_composition(roof_id(base_, f), roof_id(base_, g), roof_id(base_, *h));
    }
  }
  for (const auto& sq : base_.declared_pullbacks()) {
    b.add_pullback(roof_id(base_, sq.f), roof_id(base_, sq.g), base_.object_id(sq.object),
                   roof_id(base_, sq.first), roof_id(base_, sq.second));
  }
  return b.build();
}

CheckList verify_roof_category(const RoofCategory& rc) {
  const auto& cat = rc.base();
  const std::size_t nm = cat.morphism_count();
  for (std::size_t f = 0; f < nm; ++f) {
    for (std::size_t g = 0; g < nm; ++g) {
      if (cat.morphism(f).target == cat.morphism(g).source) rc.compose(rc.roof(f), rc.roof(g));
    }
  }

  CheckList out;
  std::vector<Apex> apexes;
  for (std::size_t o = 0; o < cat.object_count(); ++o) {
    apexes.push_back(rc.apex(o));
    const auto& ap = apexes.back();
    std::size_t cone_vertices = 0;
    for (auto b : ap.cone) cone_vertices += cat.event(b)->size(0);
    const std::size_t expected = cat.event(o)->size(0) * cone_vertices;
    out.push_back(make_record("apex-cardinality", cat.object_id(o), ap.event->size(0) == expected,
                              std::to_string(ap.event->size(0)) + " vertices, expected " + std::to_string(expected)));
  }

  for (std::size_t o = 0; o < cat.object_count(); ++o) {
    out.push_back(make_record("identity-roof", cat.object_id(o),
                              rc.roof(cat.identity(o)) == rc.identity_roof(o) &&
                                  rc.identity_roof(o).base == cat.identity(o)));
  }

  for (std::size_t m = 0; m < nm; ++m) {
    const auto r = rc.roof(m);
    const bool left = rc.compose(rc.identity_roof(r.source), r) == r;
    const bool right = rc.compose(r, rc.identity_roof(r.target)) == r;
    out.push_back(make_record("roof-unit-laws", rc.describe(r), left && right));
  }

  for (std::size_t f = 0; f < nm; ++f) {
    for (std::size_t g = 0; g < nm; ++g) {
      if (cat.morphism(f).target != cat.morphism(g).source) continue;
      const auto r1 = rc.roof(f);
      const auto r2 = rc.roof(g);
      const auto composite = rc.compose(r1, r2);
      const std::string inst = rc.describe(r1) + " ; " + rc.describe(r2);
      out.push_back(make_record("roof-functoriality", inst,
                                composite == rc.roof(*cat.compose(g, f)) && composite.base == *cat.compose(g, f)));

      // Mediation of the composite through the two lower apexes.
      const auto& top = apexes[r1.source];
      const auto& mid = apexes[r1.target];
      const auto p1 = top.first;
      const auto pi_b = rc.target_leg(r1, top);
      const auto m1 = pairing(p1, algstoch::compose(top.cone_inclusion, p1), top.event);
      const auto m2 = pairing(pi_b, algstoch::compose(mid.cone_inclusion, pi_b), mid.event);
      const bool lower_left = algstoch::compose(top.first, m1) == p1;
      const bool lower_right = algstoch::compose(mid.first, m2) == pi_b;
      const bool outer = algstoch::compose(rc.target_leg(r2, mid), m2) == rc.target_leg(composite, top);
      out.push_back(make_record("roof-mediation", inst, lower_left && lower_right && outer,
                                outer ? "" : "legs to the final target disagree"));

      for (std::size_t h = 0; h < nm; ++h) {
        if (cat.morphism(g).target != cat.morphism(h).source) continue;
        const auto r3 = rc.roof(h);
        const bool ok = rc.compose(rc.compose(r1, r2), r3) == rc.compose(r1, rc.compose(r2, r3));
        out.push_back(make_record("roof-associativity", inst + " ; " + rc.describe(r3), ok));
      }
    }
  }
  return out;
}

GrothendieckSite build_structural_roof_topology(const RoofCategory& rc) {
  return build_tau_structural(rc.as_category());
}

}  // namespace algstoch
