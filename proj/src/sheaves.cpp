#include "algstoch/sheaves.hpp"

#include "algstoch/rational.hpp"
#include "algstoch/stochastic.hpp"

#include <cmath>

namespace algstoch {

std::string to_string(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
  if (const auto* s = std::get_if<std::string>(&v)) return "\"" + *s + "\"";
  std::string out = "[";
  const auto& vec = std::get<std::vector<double>>(v);
  for (std::size_t i = 0; i < vec.size(); ++i) out += (i ? ", " : "") + format_double(vec[i]);
  return out + "]";
}

Value subtract(const Value& a, const Value& b) {
  if (const auto* x = std::get_if<double>(&a)) {
    if (const auto* y = std::get_if<double>(&b)) return *x - *y;
  }
  if (const auto* x = std::get_if<std::vector<double>>(&a)) {
    if (const auto* y = std::get_if<std::vector<double>>(&b); y && y->size() == x->size()) {
      std::vector<double> out(x->size());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*x)[i] - (*y)[i];
      return out;
    }
  }
  throw UnsupportedOperation("cannot subtract " + to_string(b) + " from " + to_string(a));
}

// ---------------------------------------------------------------- Presheaf

Presheaf::Presheaf(const FiniteCategory& cat, const PresheafData& data) : id_(data.id) {
  for (std::size_t o = 0; o < cat.object_count(); ++o) {
    auto it = data.sections.find(cat.object_id(o));
    if (it == data.sections.end()) {
      throw LookupError("presheaf '" + data.id + "' has no sections over '" + cat.object_id(o) + "'");
    }
    sections_.push_back(it->second);
  }
  for (std::size_t m = 0; m < cat.morphism_count(); ++m) {
    const auto& mm = cat.morphism(m);
    auto it = data.restrictions.find(mm.id);
    if (it != data.restrictions.end()) {
      restrictions_.push_back(it->second);
      continue;
    }
    if (sections_[mm.source] != sections_[mm.target]) {
      throw LookupError("presheaf '" + data.id + "' needs a restriction along '" + mm.id + "'");
    }
    std::vector<std::size_t> id(sections_[mm.target].size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
    restrictions_.push_back(std::move(id));
  }
  validate(cat);
}

Presheaf Presheaf::constant(const FiniteCategory& cat, const std::vector<Value>& values) {
  PresheafData data{"constant", {}, {}};
  for (std::size_t o = 0; o < cat.object_count(); ++o) data.sections[cat.object_id(o)] = values;
  return Presheaf(cat, data);
}

std::size_t Presheaf::restrict(std::size_t morphism, std::size_t section) const {
  return restrictions_.at(morphism).at(section);
}

void Presheaf::validate(const FiniteCategory& cat) const {
  for (std::size_t m = 0; m < cat.morphism_count(); ++m) {
    const auto& mm = cat.morphism(m);
    const auto& table = restrictions_[m];
    if (table.size() != sections_[mm.target].size()) {
      throw StructuralError("restriction along '" + mm.id + "' must cover every section over its target");
    }
    for (auto s : table) {
      if (s >= sections_[mm.source].size()) throw StructuralError("restriction along '" + mm.id + "' leaves the sections");
    }
    if (cat.is_identity(m)) {
      for (std::size_t s = 0; s < table.size(); ++s) {
        if (table[s] != s) throw StructuralError("restriction along '" + mm.id + "' is not the identity");
      }
    }
  }
  for (std::size_t f = 0; f < cat.morphism_count(); ++f) {
    for (std::size_t g = 0; g < cat.morphism_count(); ++g) {
      auto h = cat.compose(g, f);
      if (!h) continue;
      for (std::size_t s = 0; s < sections_[cat.morphism(g).target].size(); ++s) {
        if (restrict(*h, s) != restrict(f, restrict(g, s))) {
          throw StructuralError("restriction is not functorial on " + cat.morphism(g).id + " ∘ " + cat.morphism(f).id);
        }
      }
    }
  }
}

// ------------------------------------------------------------ gluing check

CheckList check_sheaf_condition(const GrothendieckSite& site, const Presheaf& f, const std::string& prefix) {
  CheckList out;
  const auto& cat = site.category();
  for (std::size_t target = 0; target < cat.object_count(); ++target) {
    const auto arrows = site.covering_arrows_into(target);
    if (arrows.empty()) continue;
    std::vector<std::vector<std::size_t>> families;
    if (arrows.size() <= exhaustive_family_limit) {
      for (std::uint32_t mask = 1; mask < (1U << arrows.size()); ++mask) {
        std::vector<std::size_t> fam;
        for (std::size_t i = 0; i < arrows.size(); ++i) {
          if (mask & (1U << i)) fam.push_back(arrows[i]);
        }
        families.push_back(std::move(fam));
      }
    } else {
      for (auto a : arrows) families.push_back({a});
      families.push_back(arrows);
    }

    for (const auto& fam : families) {
      std::string inst = prefix + "cover of " + cat.object_id(target) + " by {";
      for (std::size_t i = 0; i < fam.size(); ++i) inst += (i ? ", " : "") + cat.morphism(fam[i]).id;
      inst += "}";

      std::vector<std::optional<PullbackSquare>> squares(fam.size() * fam.size());
      std::size_t missing = 0;
      for (std::size_t i = 0; i < fam.size(); ++i) {
        for (std::size_t j = i; j < fam.size(); ++j) {
          squares[i * fam.size() + j] = cat.pullback(fam[i], fam[j]);
          if (!squares[i * fam.size() + j]) ++missing;
        }
      }

      std::size_t matching = 0;
      std::vector<std::size_t> tuple(fam.size(), 0);
      std::map<std::vector<std::size_t>, std::size_t> image_count;
      bool done = false;
      for (std::size_t i = 0; i < fam.size(); ++i) {
        if (f.sections(cat.morphism(fam[i]).source).empty()) done = true;
      }
      while (!done) {
        bool compatible = true;
        for (std::size_t i = 0; i < fam.size() && compatible; ++i) {
          for (std::size_t j = i; j < fam.size() && compatible; ++j) {
            const auto& sq = squares[i * fam.size() + j];
            if (sq && f.restrict(sq->first, tuple[i]) != f.restrict(sq->second, tuple[j])) compatible = false;
          }
        }
        if (compatible) {
          ++matching;
          image_count[tuple] = 0;
        }
        std::size_t k = 0;
        while (k < fam.size()) {
          if (++tuple[k] < f.sections(cat.morphism(fam[k]).source).size()) break;
          tuple[k] = 0;
          ++k;
        }
        done = k == fam.size();
      }

      std::size_t collisions = 0;
      for (std::size_t s = 0; s < f.sections(target).size(); ++s) {
        std::vector<std::size_t> image;
        for (auto m : fam) image.push_back(f.restrict(m, s));
        if (image_count[image]++ > 0) ++collisions;
      }
      const std::size_t sections = f.sections(target).size();
      const bool glues = collisions == 0 && sections == matching;
      std::string witness = std::to_string(sections) + " sections, " + std::to_string(matching) + " matching families";
      if (missing) witness += ", " + std::to_string(missing) + " pairs without a pullback";
      out.push_back(make_record("gluing", inst, glues, witness));
    }
  }
  return out;
}

// ------------------------------------------------------- boundary operators

Value q_boundary(const Value& at_source, const Value& at_target) { return subtract(at_target, at_source); }

Value q_boundary(const FiniteCategory& cat, const std::vector<Value>& values, std::size_t morphism) {
  const auto& m = cat.morphism(morphism);
  return q_boundary(values.at(m.source), values.at(m.target));
}

double d_psi(const FiniteCategory& cat, const std::vector<double>& x, std::size_t psi, MinimalityReading reading,
             bool quotient) {
  const auto& m = cat.morphism(psi);
  const auto minimal = minimal_outgoing(cat, m.source, reading);
  if (std::find(minimal.begin(), minimal.end(), psi) == minimal.end()) {
    throw PreconditionError("'" + m.id + "' is not a minimal outgoing morphism of '" + cat.object_id(m.source) + "'");
  }
  if (quotient) {
    if (!(x.at(m.source) > 0.0) || !(x.at(m.target) > 0.0)) {
      throw PreconditionError("quotient mode needs strictly positive sections");
    }
    return x.at(m.target) / x.at(m.source);
  }
  return x.at(m.target) - x.at(m.source);
}

// ---------------------------------------------------------- Brownian sheaf

Presheaf FilteredBrownianSheaf::level(std::size_t point) const {
  return Presheaf::constant(filtration->level_category(point), {Value{0.0}});
}

ConeReport transversal_cone_check(const FilteredBrownianSheaf& w, std::size_t object, const Rational& t,
                                  const Rational& t_prime, std::size_t samples, std::uint64_t seed) {
  if (!(t < t_prime)) throw PreconditionError("cone needs t < t′");
  if (samples == 0) throw PreconditionError("cone check needs at least one sample");
  const auto& f = *w.filtration;
  const auto& index = f.index();
  auto ti = index.find_time(t);
  auto tpi = index.find_time(t_prime);
  if (!ti || !tpi) throw LookupError("cone times must be base times of the framed index");
  const auto level_t = index.point(*ti, index.fiber_resolution());
  const auto level_tp = index.point(*tpi, index.fiber_resolution());
  const auto& oid = f.category().object_id(object);
  if (!f.in_level(level_t, object) || !f.in_level(level_tp, object)) {
    throw LookupError("event '" + oid + "' is not in the levels at both times");
  }

  const double t0 = to_double(t);
  const double dt = to_double(t_prime) - t0;
  ConeReport r;
  r.samples = samples;
  r.half_width = w.kappa * w.sigma * std::sqrt(dt);
  std::size_t inside = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    NormalStream normals(seed, (static_cast<std::uint64_t>(object) << 32) | i);
    const double apex = w.sigma * std::sqrt(t0) * normals.next();
    const double later = apex + w.sigma * std::sqrt(dt) * normals.next();
    if (std::abs(later - apex) <= r.half_width) ++inside;
  }
  r.containment = static_cast<double>(inside) / static_cast<double>(samples);
  r.expected = w.sigma == 0.0 ? 1.0 : 2.0 * normal_cdf(w.kappa) - 1.0;
  r.standard_error = std::sqrt(r.expected * (1.0 - r.expected) / static_cast<double>(samples));
  r.threshold = r.expected - 3.0 * r.standard_error;
  const bool open_cone = w.kappa > 0.0;
  const bool ok = open_cone && r.containment >= r.threshold;
  std::string witness = "containment " + format_double(r.containment) + ", threshold " + format_double(r.threshold);
  if (!open_cone) witness = "cone has empty interior; " + witness;
  r.record = make_record("transversal-cone",
                         oid + " from " + to_string(t) + " to " + to_string(t_prime), ok, witness);
  return r;
}

}  // namespace algstoch
