#include "algstoch/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace algstoch {

// ------------------------------------------------------------ FramedIndex

FramedIndex::FramedIndex(std::vector<Rational> base_times, int fiber_resolution)
    : base_times_(std::move(base_times)), m_(fiber_resolution) {
  if (base_times_.empty()) throw PreconditionError("framed index needs at least one base time");
  if (m_ < 1) throw PreconditionError("fiber resolution must be positive");
  for (std::size_t i = 1; i < base_times_.size(); ++i) {
    if (!(base_times_[i - 1] < base_times_[i])) throw PreconditionError("base times must be strictly increasing");
  }
}

std::size_t FramedIndex::point(std::size_t time_index, int k) const {
  if (time_index >= base_times_.size() || k < 1 || k > m_) {
    throw LookupError("framed point out of range");
  }
  return time_index * static_cast<std::size_t>(m_) + static_cast<std::size_t>(k - 1);
}

std::optional<std::size_t> FramedIndex::find_time(const Rational& t) const {
  auto it = std::lower_bound(base_times_.begin(), base_times_.end(), t);
  if (it == base_times_.end() || *it != t) return std::nullopt;
  return static_cast<std::size_t>(it - base_times_.begin());
}

std::string FramedIndex::label(std::size_t point) const {
  return "(" + to_string(q(point)) + ", " + std::to_string(fiber_step(point)) + "/" + std::to_string(m_) + ")";
}

// --------------------------------------------------- FilteredSigmaAlgebra

FilteredSigmaAlgebra::FilteredSigmaAlgebra(std::shared_ptr<const FiniteCategory> category, FramedIndex index,
                                           const std::map<std::size_t, std::vector<std::size_t>>& declared,
                                           std::vector<OperadGenerator> operad)
    : category_(std::move(category)), index_(std::move(index)), operad_(std::move(operad)) {
  if (!declared.count(0)) throw PreconditionError("the first framed point must declare its level");
  levels_.resize(index_.size());
  for (std::size_t p = 0; p < index_.size(); ++p) {
    auto it = declared.find(p);
    if (it == declared.end()) {
      levels_[p] = levels_[p - 1];
      continue;
    }
    std::vector<std::size_t> objs = it->second;
    for (auto o : objs) {
      if (o >= category_->object_count()) throw LookupError("level refers to an unknown object");
    }
    std::sort(objs.begin(), objs.end());
    objs.erase(std::unique(objs.begin(), objs.end()), objs.end());
    levels_[p] = std::move(objs);
  }
  for (const auto& g : operad_) {
    if (g.point >= index_.size()) throw LookupError("operad generator '" + g.id + "' at an unknown framed point");
    if (g.inputs.empty()) throw PreconditionError("operad generator '" + g.id + "' has no inputs");
    for (auto o : g.inputs) {
      if (o >= category_->object_count()) throw LookupError("operad generator '" + g.id + "' uses an unknown object");
    }
    if (g.output >= category_->object_count()) {
      throw LookupError("operad generator '" + g.id + "' uses an unknown object");
    }
  }
}

bool FilteredSigmaAlgebra::in_level(std::size_t point, std::size_t object) const {
  const auto& lv = level(point);
  return std::binary_search(lv.begin(), lv.end(), object);
}

std::vector<AtomSet> FilteredSigmaAlgebra::level_atoms(std::size_t point) const {
  std::vector<AtomSet> out;
  for (auto o : level(point)) out.push_back(category_->event(o)->atoms());
  return out;
}

FiniteCategory FilteredSigmaAlgebra::level_category(std::size_t point) const {
  return category_->full_subcategory(level(point));
}

std::vector<std::size_t> FilteredSigmaAlgebra::generators_available(std::size_t point) const {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < operad_.size(); ++g) {
    if (operad_[g].point <= point) out.push_back(g);
  }
  return out;
}

// ------------------------------------------------------------ σ-levels

SigmaLevelReport check_sigma_level(const std::vector<AtomSet>& level, std::size_t universe) {
  SigmaLevelReport report;
  std::set<AtomSet> present(level.begin(), level.end());
  report.contains_full = present.count(AtomSet::full(universe)) > 0;
  std::set<AtomSet> complements, unions;
  for (const auto& a : present) {
    if (!present.count(a.complement())) complements.insert(a.complement());
    for (const auto& b : present) {
      if (!present.count(a | b)) unions.insert(a | b);
    }
  }
  report.missing_complements.assign(complements.begin(), complements.end());
  report.missing_unions.assign(unions.begin(), unions.end());

  std::set<AtomSet> closure = present;
  closure.insert(AtomSet::full(universe));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<AtomSet> current(closure.begin(), closure.end());
    for (const auto& a : current) {
      grew |= closure.insert(a.complement()).second;
      for (const auto& b : current) grew |= closure.insert(a | b).second;
    }
  }
  for (const auto& a : closure) {
    if (!present.count(a)) report.closure_deficit.push_back(a);
  }
  return report;
}

CheckList check_sigma_levels(const FilteredSigmaAlgebra& f, const GroundSet& ground) {
  CheckList out;
  for (std::size_t p = 0; p < f.index().size(); ++p) {
    auto report = check_sigma_level(f.level_atoms(p), ground.size());
    std::string witness;
    if (!report.contains_full) witness += "missing the full event; ";
    for (const auto& a : report.missing_complements) witness += "missing complement " + ground.describe(a) + "; ";
    for (const auto& a : report.missing_unions) witness += "missing union " + ground.describe(a) + "; ";
    if (!witness.empty()) witness.resize(witness.size() - 2);
    out.push_back(make_record("sigma-closure", f.index().label(p), report.closed(), witness));
  }
  return out;
}

CheckList check_monotone(const FilteredSigmaAlgebra& f) {
  CheckList out;
  const auto& cat = f.category();
  for (std::size_t s = 0; s < f.index().size(); ++s) {
    for (std::size_t t = s + 1; t < f.index().size(); ++t) {
      std::string witness;
      for (auto o : f.level(s)) {
        if (!f.in_level(t, o)) witness += (witness.empty() ? "" : ", ") + cat.object_id(o);
      }
      out.push_back(make_record("level-monotone", f.index().label(s) + " <= " + f.index().label(t),
                                witness.empty(), witness.empty() ? "" : "dropped " + witness));
    }
  }
  return out;
}

// -------------------------------------------------------------- measures

ProbabilityMeasure::ProbabilityMeasure(std::vector<double> atom_weights) : weights_(std::move(atom_weights)) {
  if (weights_.empty() || weights_.size() > AtomSet::max_universe) {
    throw PreconditionError("measure needs between 1 and 64 atoms");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw PreconditionError("atom weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > sum_tolerance) {
    throw PreconditionError("atom weights sum to " + format_double(total) + ", not 1");
  }
}

ProbabilityMeasure ProbabilityMeasure::uniform(std::size_t atoms) {
  return ProbabilityMeasure(std::vector<double>(atoms, 1.0 / static_cast<double>(atoms)));
}

double ProbabilityMeasure::operator()(const AtomSet& event) const {
  if (event.universe() != weights_.size()) throw PreconditionError("event over a different ground set");
  double total = 0.0;
  for (auto a : event.members()) total += weights_[a];
  return total;
}

Rational ProbabilityMeasure::exact(const AtomSet& event) const {
  if (event.universe() != weights_.size()) throw PreconditionError("event over a different ground set");
  Rational total = 0;
  for (auto a : event.members()) total += Rational(weights_[a]);
  return total;
}

CheckList check_sub_homomorphism(const ProbabilityMeasure& p, const std::vector<AtomSet>& level,
                                 const GroundSet& ground) {
  CheckList out;
  std::vector<AtomSet> events = level;
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  const AtomSet empty(ground.size());
  out.push_back(make_record("measure-empty", "{}", p.exact(empty) == 0));
  auto d = [&](const AtomSet& a) { return ground.describe(a); };
  for (std::size_t i = 0; i < events.size(); ++i) {
    for (std::size_t j = i + 1; j < events.size(); ++j) {
      const auto& a = events[i];
      const auto& b = events[j];
      const Rational joint = p.exact(a | b);
      const Rational sum = p.exact(a) + p.exact(b);
      const std::string inst = d(a) + ", " + d(b);
      const std::string witness = "P(union) = " + to_decimal_string(joint) + ", sum = " + to_decimal_string(sum);
      if ((a & b).empty()) {
        out.push_back(make_record("disjoint-additivity", inst, joint == sum, witness));
      } else {
        out.push_back(make_record("subadditivity", inst, joint <= sum, witness));
      }
      for (std::size_t k = j + 1; k < events.size(); ++k) {
        const auto& c = events[k];
        const Rational joint3 = p.exact(a | b | c);
        const Rational sum3 = sum + p.exact(c);
        out.push_back(make_record("subadditivity", inst + ", " + d(c), joint3 <= sum3,
                                  "P(union) = " + to_decimal_string(joint3) + ", sum = " + to_decimal_string(sum3)));
      }
    }
  }
  return out;
}

LevelMeasure::LevelMeasure(ProbabilityMeasure p, std::vector<AtomSet> events)
    : p_(std::move(p)), events_(std::move(events)) {
  std::sort(events_.begin(), events_.end());
  events_.erase(std::unique(events_.begin(), events_.end()), events_.end());
}

bool LevelMeasure::contains(const AtomSet& event) const {
  return std::binary_search(events_.begin(), events_.end(), event);
}

double LevelMeasure::operator()(const AtomSet& event) const {
  if (!contains(event)) throw LookupError("event is not in the level");
  return p_(event);
}

LevelMeasure restrict_measure(const ProbabilityMeasure& p, const std::vector<AtomSet>& level_s,
                              const std::vector<AtomSet>& level_t) {
  std::set<AtomSet> t(level_t.begin(), level_t.end());
  for (const auto& e : level_s) {
    if (!t.count(e)) throw PreconditionError("restriction target is not a sublevel");
  }
  return LevelMeasure(p, level_s);
}

namespace {

std::map<double, AtomSet> preimages(std::size_t universe, const std::vector<double>& x) {
  if (x.size() != universe) throw PreconditionError("random variable must be defined on every atom");
  std::map<double, AtomSet> out;
  for (std::size_t a = 0; a < x.size(); ++a) {
    auto [it, inserted] = out.try_emplace(x[a], AtomSet(universe));
    it->second.insert(a);
  }
  return out;
}

}  // namespace

Histogram pushforward(const ProbabilityMeasure& p, const std::vector<double>& x) {
  Histogram out;
  for (const auto& [v, pre] : preimages(p.universe(), x)) out[v] = p(pre);
  return out;
}

Histogram pushforward(const LevelMeasure& p, const std::vector<double>& x) {
  Histogram out;
  for (const auto& [v, pre] : preimages(p.measure().universe(), x)) out[v] = p(pre);
  return out;
}

// ------------------------------------------------------------ operad

OperadReport check_operad_action(const FilteredSigmaAlgebra& f) {
  OperadReport report;
  const auto& cat = f.category();
  for (const auto& g : f.operad()) {
    std::string witness;
    for (auto o : g.inputs) {
      if (!f.in_level(g.point, o)) witness += "input " + cat.object_id(o) + " not in level; ";
    }
    if (!f.in_level(g.point, g.output)) witness += "output " + cat.object_id(g.output) + " not in level; ";
    if (!witness.empty()) witness.resize(witness.size() - 2);
    report.records.push_back(
        make_record("operad-action", g.id + " at " + f.index().label(g.point), witness.empty(), witness));
  }
  std::size_t total = 0;
  std::size_t covered = 0;
  for (std::size_t p = 0; p < f.index().size(); ++p) {
    auto available = f.generators_available(p);
    for (auto o : f.level(p)) {
      ++total;
      for (auto gi : available) {
        if (f.operad()[gi].output == o) {
          ++covered;
          break;
        }
      }
    }
  }
  report.coverage = total == 0 ? 1.0 : static_cast<double>(covered) / static_cast<double>(total);
  return report;
}

}  // namespace algstoch
