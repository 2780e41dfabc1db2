#include "algstoch/errors.hpp"
#include "algstoch/roof_category.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace algstoch;
using algstoch::testing::discrete_event;
using algstoch::testing::load_fixture;
using algstoch::testing::passing_fixtures;

TEST(Roofs, AxiomsHoldOnBundledFixtures) {
  for (const auto& name : passing_fixtures()) {
    auto m = load_fixture(name);
    RoofCategory rc(*m.category);
    auto records = verify_roof_category(rc);
    EXPECT_TRUE(all_pass(records)) << name;
    std::size_t functoriality = 0;
    for (const auto& r : records) functoriality += r.check == "roof-functoriality";
    // One record per composable pair of base morphisms.
    std::size_t pairs = 0;
    const auto& cat = *m.category;
    for (std::size_t f = 0; f < cat.morphism_count(); ++f) {
      for (std::size_t g = 0; g < cat.morphism_count(); ++g) pairs += cat.morphism(f).target == cat.morphism(g).source;
    }
    EXPECT_EQ(functoriality, pairs) << name;
  }
}

TEST(Roofs, ApexIsProductWithConeCoproduct) {
  auto m = load_fixture("six_events");
  RoofCategory rc(*m.category);
  const auto& cat = *m.category;
  const auto point = cat.object_index("PointA");
  auto apex = rc.apex(point);
  // PointA sits below Split, Path and Triangle.
  EXPECT_EQ(apex.cone.size(), 4u);
  EXPECT_EQ(apex.event->size(0), 1u * (1 + 3 + 3 + 3));
  EXPECT_EQ(apex.first.target(), *cat.event(point));
}

TEST(Roofs, CompositionFollowsTheBase) {
  auto m = load_fixture("chain");
  RoofCategory rc(*m.category);
  const auto& cat = *m.category;
  auto r1 = rc.roof(*cat.find_morphism("i_Vertex_Edge"));
  auto r2 = rc.roof(*cat.find_morphism("i_Edge_Face"));
  EXPECT_EQ(rc.compose(r1, r2), rc.roof(*cat.find_morphism("i_Vertex_Face")));
  EXPECT_THROW(rc.compose(r2, r1), PreconditionError);
  EXPECT_EQ(rc.describe(r1), "roof(i_Vertex_Edge): Vertex -> Edge");
}

TEST(Roofs, MissingCompositeRaisesClosureError) {
  GroundSet g({"a"});
  auto e = discrete_event({"p"}, g.full());
  FiniteCategory::Builder b;
  b.add_object("A", e).add_object("B", e).add_object("C", e);
  b.add_morphism("f", "A", "B").add_morphism("g", "B", "C");
  b.add_morphism("h1", "A", "C").add_morphism("h2", "A", "C");
  RoofCategory rc(b.build());
  try {
    verify_roof_category(rc);
    FAIL() << "expected a ClosureError";
  } catch (const ClosureError& err) {
    EXPECT_NE(std::string(err.what()).find("(f, g)"), std::string::npos);
  }
}

TEST(Roofs, StructuralTopologyOnRoofs) {
  for (const auto& name : passing_fixtures()) {
    auto m = load_fixture(name);
    RoofCategory rc(*m.category);
    auto site = build_structural_roof_topology(rc);
    EXPECT_EQ(site.category().morphism_count(), m.category->morphism_count());
    EXPECT_TRUE(all_pass(verify_grothendieck(site))) << name;
  }
}
