#pragma once

// Filtered σ-algebras over a discrete framed index, operad generators acting
// on the levels, and atom-generated probability measures.

#include "algstoch/category.hpp"
#include "algstoch/check.hpp"
#include "algstoch/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace algstoch {

/// Base times t_0 < ... < t_{T-1} with each fiber (0, 1] cut into m steps.
/// Point i is (t_{i / m}, (i % m + 1) / m); points are ordered lexicographically.
class FramedIndex {
 public:
  FramedIndex(std::vector<Rational> base_times, int fiber_resolution);

  std::size_t size() const noexcept { return base_times_.size() * static_cast<std::size_t>(m_); }
  int fiber_resolution() const noexcept { return m_; }
  const std::vector<Rational>& base_times() const noexcept { return base_times_; }

  std::size_t point(std::size_t time_index, int k) const;
  std::size_t time_index(std::size_t point) const { return point / static_cast<std::size_t>(m_); }
  int fiber_step(std::size_t point) const { return static_cast<int>(point % static_cast<std::size_t>(m_)) + 1; }
  /// Projection to the base time.
  const Rational& q(std::size_t point) const { return base_times_.at(time_index(point)); }
  std::optional<std::size_t> find_time(const Rational& t) const;
  /// "(t, k/m)".
  std::string label(std::size_t point) const;

 private:
  std::vector<Rational> base_times_;
  int m_;
};

/// Multi-arrow (inputs) -> output available from framed point `point` on.
struct OperadGenerator {
  std::string id;
  std::size_t point = 0;
  std::vector<std::size_t> inputs;
  std::size_t output = 0;
};

class FilteredSigmaAlgebra {
 public:
  /// `declared` maps framed points to object sets; points without an entry
  /// inherit the level of their predecessor. The first point must be declared.
  FilteredSigmaAlgebra(std::shared_ptr<const FiniteCategory> category, FramedIndex index,
                       const std::map<std::size_t, std::vector<std::size_t>>& declared,
                       std::vector<OperadGenerator> operad = {});

  const FiniteCategory& category() const noexcept { return *category_; }
  const std::shared_ptr<const FiniteCategory>& category_ptr() const noexcept { return category_; }
  const FramedIndex& index() const noexcept { return index_; }
  const std::vector<OperadGenerator>& operad() const noexcept { return operad_; }

  /// Sorted object indices of the level at a framed point.
  const std::vector<std::size_t>& level(std::size_t point) const { return levels_.at(point); }
  bool in_level(std::size_t point, std::size_t object) const;
  std::vector<AtomSet> level_atoms(std::size_t point) const;
  /// Top level, the finite stand-in for the colimit of the filtration.
  std::size_t top() const noexcept { return index_.size() - 1; }
  FiniteCategory level_category(std::size_t point) const;
  /// Generators declared at or before `point`.
  std::vector<std::size_t> generators_available(std::size_t point) const;

 private:
  std::shared_ptr<const FiniteCategory> category_;
  FramedIndex index_;
  std::vector<std::vector<std::size_t>> levels_;
  std::vector<OperadGenerator> operad_;
};

struct SigmaLevelReport {
  bool contains_full = false;
  std::vector<AtomSet> missing_complements;
  std::vector<AtomSet> missing_unions;
  /// Everything the closure under complement and union adds.
  std::vector<AtomSet> closure_deficit;

  bool closed() const noexcept {
    return contains_full && missing_complements.empty() && missing_unions.empty();
  }
};

/// Closure of an event collection (as atom sets) under complement and pairwise union.
SigmaLevelReport check_sigma_level(const std::vector<AtomSet>& level, std::size_t universe);

/// Level inclusion s <= t  =>  level(s) ⊆ level(t), for every pair of framed points.
CheckList check_monotone(const FilteredSigmaAlgebra& f);

/// Closure record per framed point.
CheckList check_sigma_levels(const FilteredSigmaAlgebra& f, const GroundSet& ground);

class ProbabilityMeasure {
 public:
  static constexpr double sum_tolerance = 1e-9;

  explicit ProbabilityMeasure(std::vector<double> atom_weights);
  static ProbabilityMeasure uniform(std::size_t atoms);

  std::size_t universe() const noexcept { return weights_.size(); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double operator()(const AtomSet& event) const;
  /// Exact sum of the (binary) weights.
  Rational exact(const AtomSet& event) const;

 private:
  std::vector<double> weights_;
};

/// Exact additivity on disjoint pairs and subadditivity on pairs and triples.
CheckList check_sub_homomorphism(const ProbabilityMeasure& p, const std::vector<AtomSet>& level,
                                 const GroundSet& ground);

/// P restricted to the events of one level.
class LevelMeasure {
 public:
  LevelMeasure(ProbabilityMeasure p, std::vector<AtomSet> events);

  const std::vector<AtomSet>& events() const noexcept { return events_; }
  bool contains(const AtomSet& event) const;
  /// LookupError for events outside the level.
  double operator()(const AtomSet& event) const;
  const ProbabilityMeasure& measure() const noexcept { return p_; }

 private:
  ProbabilityMeasure p_;
  std::vector<AtomSet> events_;
};

/// P_s on level_s; PreconditionError unless level_s ⊆ level_t.
LevelMeasure restrict_measure(const ProbabilityMeasure& p, const std::vector<AtomSet>& level_s,
                              const std::vector<AtomSet>& level_t);

using Histogram = std::map<double, double>;

/// (X_* P)(v) = P(X^{-1}(v)) for X given per atom.
Histogram pushforward(const ProbabilityMeasure& p, const std::vector<double>& x);
/// Same through a level measure; LookupError when a preimage is not in the level.
Histogram pushforward(const LevelMeasure& p, const std::vector<double>& x);

struct OperadReport {
  CheckList records;
  /// Fraction of (point, level event) pairs that are the output of an available generator.
  double coverage = 1.0;
};

OperadReport check_operad_action(const FilteredSigmaAlgebra& f);

}  // namespace algstoch
