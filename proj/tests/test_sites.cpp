#include "algstoch/errors.hpp"
#include "algstoch/sites.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace algstoch;
using algstoch::testing::discrete_event;
using algstoch::testing::load_fixture;
using algstoch::testing::passing_fixtures;

namespace {

bool has_failure(const CheckList& records, const std::string& check, const std::string& instance_part) {
  for (const auto& r : failures(records)) {
    if (r.check == check && r.instance.find(instance_part) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST(Topology, NamesRoundTrip) {
  for (auto t : {Topology::operadic, Topology::probability, Topology::structural}) {
    EXPECT_EQ(parse_topology(to_string(t)), t);
  }
  EXPECT_THROW(parse_topology("zariski"), PreconditionError);
}

TEST(Sites, AllTopologiesPassOnBundledFixtures) {
  for (const auto& name : passing_fixtures()) {
    auto m = load_fixture(name);
    EXPECT_TRUE(all_pass(verify_grothendieck(build_tau_structural(*m.category)))) << name;
    if (!m.filtration) continue;
    EXPECT_TRUE(all_pass(verify_grothendieck(build_tau_operadic(*m.filtration)))) << name;
    EXPECT_TRUE(all_pass(verify_grothendieck(build_tau_P(*m.filtration, *m.measure)))) << name;
  }
}

TEST(Sites, ProbabilityCoveringMatchesWeightOracle) {
  auto m = load_fixture("six_events");
  const auto& f = *m.filtration;
  for (std::size_t p = 0; p < f.index().size(); ++p) {
    auto site = build_tau_P(f, *m.measure, p);
    const auto& cat = site.category();
    auto parts = connected_components(cat);
    for (std::size_t i = 0; i < cat.morphism_count(); ++i) {
      const auto& mm = cat.morphism(i);
      double ps = 0.0;
      double pt = 0.0;
      for (auto a : cat.event(mm.source)->atoms().members()) ps += m.measure->weights()[a];
      for (auto a : cat.event(mm.target)->atoms().members()) pt += m.measure->weights()[a];
      const bool expected = cat.is_isomorphism(i) || (parts.same(mm.source, mm.target) && ps <= pt);
      EXPECT_EQ(site.is_covering_arrow(i), expected) << mm.id;
    }
  }
}

TEST(Sites, CoversNeedsCommonTargetAndCoveringArrows) {
  auto m = load_fixture("four_events");
  auto site = build_tau_structural(*m.category);
  const auto& cat = site.category();
  EXPECT_FALSE(site.covers({}));
  const auto a = *cat.find_morphism("i_A_Omega");
  const auto ac = *cat.find_morphism("i_Ac_Omega");
  const auto e = *cat.find_morphism("i_Empty_A");
  EXPECT_TRUE(site.covers({a, ac}));
  EXPECT_FALSE(site.covers({a, e}));
  EXPECT_EQ(site.covering_arrows_into(cat.object_index("Omega")).size(), 4u);
}

TEST(Sites, StructuralTopologySkipsCollapsingMaps) {
  GroundSet g({"a"});
  auto two = discrete_event({"x", "y"}, g.full());
  auto one = discrete_event({"p"}, g.full());
  FiniteCategory::Builder b;
  b.add_object("Two", two).add_object("One", one);
  b.add_morphism("collapse", "Two", "One", EventMap::from_vertex_map(two, one, {{"x", "p"}, {"y", "p"}}));
  auto site = build_tau_structural(b.build());
  EXPECT_FALSE(site.is_covering_arrow(*site.category().find_morphism("collapse")));
  EXPECT_TRUE(site.is_covering_arrow(site.category().identity(0)));
  EXPECT_TRUE(all_pass(verify_grothendieck(site)));
}

TEST(Sites, MissingPullbackIsNamed) {
  auto m = load_fixture("defect_missing_pullback");
  auto records = verify_grothendieck(build_tau_structural(*m.category));
  EXPECT_TRUE(has_failure(records, "base-change", "(A, Ac) over Omega"));
  EXPECT_TRUE(has_failure(records, "base-change", "(Ac, A) over Omega"));
  EXPECT_EQ(failures(records).size(), 2u);
  EXPECT_EQ(failures(records).front().witness, "no pullback for the cospan A -> Omega <- Ac");
}

TEST(Sites, OperadGapIsNamed) {
  auto m = load_fixture("defect_operad_gap");
  auto records = verify_grothendieck(build_tau_operadic(*m.filtration));
  EXPECT_TRUE(has_failure(records, "base-change", "(Ac, A) over Omega"));
  EXPECT_TRUE(has_failure(records, "base-change", "(Empty, A) over Omega"));
  // The probability topology does not depend on the operad.
  EXPECT_TRUE(all_pass(verify_grothendieck(build_tau_P(*m.filtration, *m.measure))));
}

TEST(Sites, CoveringArrowsPersistAlongTheFiltration) {
  auto m = load_fixture("partition");
  auto site = build_tau_P(*m.filtration, *m.measure);
  auto records = verify_grothendieck(site);
  EXPECT_EQ(count_status(records, Status::fail), 0u);
  std::size_t monotone = 0;
  for (const auto& r : records) monotone += r.check == "covering-monotone";
  EXPECT_EQ(monotone, m.filtration->index().size() - 1);
}
