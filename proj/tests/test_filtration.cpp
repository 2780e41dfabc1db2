#include "algstoch/errors.hpp"
#include "algstoch/filtration.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace algstoch;
using algstoch::testing::discrete_event;
using algstoch::testing::load_fixture;

namespace {

std::vector<AtomSet> level_sets(const FilteredSigmaAlgebra& f, std::size_t p) { return f.level_atoms(p); }

// Closure under complement and union by brute force over all subsets of the level.
std::set<std::uint64_t> closure_oracle(const std::vector<AtomSet>& level, std::size_t universe) {
  std::set<std::uint64_t> out;
  for (const auto& e : level) out.insert(e.bits());
  const std::uint64_t full = universe == 64 ? ~0ULL : ((1ULL << universe) - 1);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::uint64_t> cur(out.begin(), out.end());
    for (auto a : cur) {
      grew |= out.insert(full & ~a).second;
      for (auto b : cur) grew |= out.insert(a | b).second;
    }
  }
  return out;
}

}  // namespace

TEST(FramedIndex, PointsAreLexicographic) {
  FramedIndex idx({Rational(0), Rational(1, 2), Rational(1)}, 2);
  EXPECT_EQ(idx.size(), 6u);
  EXPECT_EQ(idx.point(1, 1), 2u);
  EXPECT_EQ(idx.point(2, 2), 5u);
  EXPECT_EQ(idx.q(3), Rational(1, 2));
  EXPECT_EQ(idx.fiber_step(3), 2);
  EXPECT_EQ(idx.label(3), "(1/2, 2/2)");
  EXPECT_EQ(idx.find_time(Rational(1, 2)), std::optional<std::size_t>(1));
  EXPECT_FALSE(idx.find_time(Rational(1, 3)).has_value());
  EXPECT_THROW(FramedIndex({Rational(1), Rational(0)}, 1), PreconditionError);
  EXPECT_THROW(FramedIndex({Rational(0)}, 0), PreconditionError);
}

TEST(Filtration, LevelsInheritFromPredecessor) {
  auto m = load_fixture("six_events");
  const auto& f = *m.filtration;
  const auto& cat = f.category();
  EXPECT_EQ(f.level(0).size(), 2u);
  EXPECT_EQ(f.level(1), f.level(0));
  EXPECT_EQ(f.level(2).size(), 3u);
  EXPECT_EQ(f.level(f.top()).size(), 6u);
  EXPECT_TRUE(f.in_level(2, cat.object_index("Path")));
  EXPECT_FALSE(f.in_level(1, cat.object_index("Path")));
  EXPECT_TRUE(all_pass(check_monotone(f)));
}

TEST(Filtration, NonMonotoneLevelsAreReported) {
  auto m = load_fixture("four_events");
  const auto& cat = m.category;
  FilteredSigmaAlgebra f(cat, FramedIndex({Rational(0), Rational(1)}, 1),
                         {{0, {cat->object_index("A"), cat->object_index("Omega")}}, {1, {cat->object_index("Omega")}}});
  auto records = check_monotone(f);
  ASSERT_FALSE(all_pass(records));
  EXPECT_EQ(failures(records).front().check, "level-monotone");
}

TEST(Filtration, FirstPointMustBeDeclared) {
  auto m = load_fixture("four_events");
  EXPECT_THROW(FilteredSigmaAlgebra(m.category, FramedIndex({Rational(0), Rational(1)}, 1), {{1, {0}}}),
               PreconditionError);
}

TEST(SigmaLevel, PartitionLevelsAreClosed) {
  auto m = load_fixture("partition");
  EXPECT_TRUE(all_pass(check_sigma_levels(*m.filtration, m.ground)));
}

TEST(SigmaLevel, DeficitMatchesClosureOracle) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    std::vector<AtomSet> level;
    const std::size_t count = 1 + rng() % 4;
    for (std::size_t i = 0; i < count; ++i) {
      AtomSet s(n);
      for (std::size_t a = 0; a < n; ++a) {
        if (rng() % 2) s.insert(a);
      }
      level.push_back(s);
    }
    auto report = check_sigma_level(level, n);
    auto oracle = closure_oracle(level, n);
    std::set<std::uint64_t> have;
    for (const auto& e : level) have.insert(e.bits());
    std::set<std::uint64_t> deficit;
    for (const auto& e : report.closure_deficit) deficit.insert(e.bits());
    std::set<std::uint64_t> expected;
    for (auto b : oracle) {
      if (!have.count(b)) expected.insert(b);
    }
    EXPECT_EQ(deficit, expected);
    EXPECT_EQ(report.closed(), expected.empty() && have.count(AtomSet::full(n).bits()));
  }
}

TEST(Measure, WeightsMustSumToOne) {
  EXPECT_THROW(ProbabilityMeasure({0.5, 0.4}), PreconditionError);
  EXPECT_NO_THROW(ProbabilityMeasure({0.5, 0.5 + 1e-12}));
  EXPECT_THROW(ProbabilityMeasure({1.5, -0.5}), PreconditionError);
  auto u = ProbabilityMeasure::uniform(4);
  AtomSet two(4);
  two.insert(0);
  two.insert(3);
  EXPECT_DOUBLE_EQ(u(two), 0.5);
  EXPECT_EQ(u.exact(two), Rational(1, 2));
}

TEST(Measure, SubHomomorphismOnPartitionLevels) {
  auto m = load_fixture("partition");
  for (std::size_t p = 0; p < m.filtration->index().size(); ++p) {
    EXPECT_TRUE(all_pass(check_sub_homomorphism(*m.measure, level_sets(*m.filtration, p), m.ground)));
  }
}

TEST(Measure, RestrictionAndPushforward) {
  auto m = load_fixture("partition");
  const auto& f = *m.filtration;
  auto mid = level_sets(f, 1);
  auto top = level_sets(f, f.top());
  auto lm = restrict_measure(*m.measure, mid, top);
  EXPECT_DOUBLE_EQ(lm(m.ground.subset({"a", "b"})), 0.5);
  EXPECT_THROW(lm(m.ground.subset({"a"})), LookupError);
  EXPECT_THROW(restrict_measure(*m.measure, top, mid), PreconditionError);

  // X = 1 on {a, b}, 2 on {c, d}: measurable for the middle level.
  auto h = pushforward(lm, {1.0, 1.0, 2.0, 2.0});
  EXPECT_DOUBLE_EQ(h.at(1.0), 0.5);
  EXPECT_DOUBLE_EQ(h.at(2.0), 0.5);
  // X separating a from b is not measurable there.
  EXPECT_THROW(pushforward(lm, {1.0, 2.0, 3.0, 3.0}), LookupError);
  auto full = pushforward(*m.measure, {1.0, 2.0, 3.0, 3.0});
  EXPECT_DOUBLE_EQ(full.at(3.0), 0.5);
}

TEST(Operad, SaturatedFixturesHaveFullCoverage) {
  for (const auto& name : algstoch::testing::passing_fixtures()) {
    auto m = load_fixture(name);
    if (!m.filtration) continue;
    auto report = check_operad_action(*m.filtration);
    EXPECT_TRUE(all_pass(report.records)) << name;
    EXPECT_DOUBLE_EQ(report.coverage, 1.0) << name;
  }
}

TEST(Operad, GeneratorsAccumulate) {
  auto m = load_fixture("six_events");
  const auto& f = *m.filtration;
  EXPECT_LT(f.generators_available(0).size(), f.generators_available(2).size());
  EXPECT_EQ(f.generators_available(f.top()).size(), f.operad().size());
}
