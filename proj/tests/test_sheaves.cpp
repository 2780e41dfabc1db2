#include "algstoch/errors.hpp"
#include "algstoch/sheaves.hpp"
#include "algstoch/stochastic.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace algstoch;
using algstoch::testing::discrete_event;
using algstoch::testing::load_fixture;
using algstoch::testing::passing_fixtures;

namespace {

FiniteCategory chain_category() {
  GroundSet g({"a"});
  auto e = discrete_event({"p"}, g.full());
  FiniteCategory::Builder b;
  b.add_object("A", e).add_object("B", e).add_object("C", e);
  b.add_morphism("f", "A", "B").add_morphism("g", "B", "C").add_morphism("h", "A", "C");
  return b.build();
}

}  // namespace

TEST(Values, SubtractionByKind) {
  EXPECT_EQ(std::get<double>(subtract(Value{3.5}, Value{1.0})), 2.5);
  auto v = std::get<std::vector<double>>(subtract(Value{std::vector<double>{1, 2}}, Value{std::vector<double>{0.5, 3}}));
  EXPECT_EQ(v, (std::vector<double>{0.5, -1}));
  EXPECT_THROW(subtract(Value{std::string("x")}, Value{std::string("y")}), UnsupportedOperation);
  EXPECT_THROW(subtract(Value{std::vector<double>{1}}, Value{std::vector<double>{1, 2}}), UnsupportedOperation);
  EXPECT_EQ(to_string(Value{std::string("up")}), "\"up\"");
}

TEST(Presheaf, ConstantPresheafGluesOnBundledFixtures) {
  for (const auto& name : passing_fixtures()) {
    auto m = load_fixture(name);
    auto site = build_tau_structural(*m.category);
    auto records = check_sheaf_condition(site, Presheaf::constant(*m.category, {Value{0.0}}));
    EXPECT_FALSE(records.empty()) << name;
    EXPECT_TRUE(all_pass(records)) << name;
  }
}

TEST(Presheaf, PlantedNonGluingNamesItsCover) {
  auto m = load_fixture("defect_nongluing");
  auto site = build_tau_structural(*m.category);
  auto records = check_sheaf_condition(site, Presheaf(*m.category, m.presheaf("doubled")));
  auto bad = failures(records);
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_EQ(bad[0].instance, "cover of Omega by {i_A_Omega}");
  EXPECT_EQ(bad[0].witness, "1 sections, 2 matching families");
}

TEST(Presheaf, RestrictionsMustBeFunctorial) {
  auto cat = chain_category();
  PresheafData d{"p", {{"A", {0.0, 1.0}}, {"B", {0.0, 1.0}}, {"C", {0.0, 1.0}}},
                 {{"f", {1, 0}}, {"g", {1, 0}}, {"h", {1, 0}}}};
  EXPECT_THROW(Presheaf(cat, d), StructuralError);
  d.restrictions["h"] = {0, 1};
  EXPECT_NO_THROW(Presheaf(cat, d));
  d.sections.erase("B");
  EXPECT_THROW(Presheaf(cat, d), LookupError);
}

TEST(Presheaf, UnlistedRestrictionNeedsEqualSections) {
  auto cat = chain_category();
  PresheafData d{"p", {{"A", {0.0}}, {"B", {0.0, 1.0}}, {"C", {0.0, 1.0}}}, {}};
  EXPECT_THROW(Presheaf(cat, d), LookupError);
}

TEST(Boundary, QBoundaryIsTargetMinusSource) {
  auto cat = chain_category();
  std::vector<Value> values{Value{1.0}, Value{4.0}, Value{9.0}};
  const auto f = *cat.find_morphism("f");
  EXPECT_EQ(std::get<double>(q_boundary(cat, values, f)), 3.0);
  EXPECT_EQ(std::get<double>(q_boundary(Value{2.0}, Value{2.0})), 0.0);
  // Telescoping along the chain.
  const auto g = *cat.find_morphism("g");
  const auto gf = *cat.compose(g, f);
  EXPECT_EQ(std::get<double>(q_boundary(cat, values, gf)),
            std::get<double>(q_boundary(cat, values, f)) + std::get<double>(q_boundary(cat, values, g)));
}

TEST(Boundary, DPsiNeedsMinimalMorphism) {
  auto cat = chain_category();
  std::vector<double> x{1.0, 2.0, 8.0};
  const auto f = *cat.find_morphism("f");
  const auto g = *cat.find_morphism("g");
  const auto gf = *cat.compose(g, f);
  EXPECT_EQ(d_psi(cat, x, f), 1.0);
  EXPECT_EQ(d_psi(cat, x, g, MinimalityReading::factorization, true), 4.0);
  EXPECT_THROW(d_psi(cat, x, gf), PreconditionError);
  x[0] = 0.0;
  EXPECT_THROW(d_psi(cat, x, f, MinimalityReading::factorization, true), PreconditionError);
}

TEST(Cones, ContainmentNearNormalMass) {
  auto m = load_fixture("six_events");
  FilteredBrownianSheaf w{&*m.filtration, 1.0, 3.0};
  auto r = transversal_cone_check(w, m.category->object_index("Triangle"), Rational(0), Rational(1), 10000, 5);
  EXPECT_EQ(r.record.status, Status::pass);
  EXPECT_NEAR(r.expected, 2.0 * normal_cdf(3.0) - 1.0, 1e-15);
  EXPECT_NEAR(r.expected, 0.9973, 1e-4);
  EXPECT_GE(r.containment, r.threshold);
}

TEST(Cones, DegenerateAndInvalidInputs) {
  auto m = load_fixture("six_events");
  const auto tri = m.category->object_index("Triangle");
  FilteredBrownianSheaf w{&*m.filtration, 1.0, 0.0};
  auto r = transversal_cone_check(w, tri, Rational(0), Rational(1), 100, 1);
  EXPECT_EQ(r.record.status, Status::fail);
  EXPECT_NE(r.record.witness.find("empty interior"), std::string::npos);

  FilteredBrownianSheaf still{&*m.filtration, 0.0, 3.0};
  EXPECT_EQ(transversal_cone_check(still, tri, Rational(0), Rational(1), 100, 1).containment, 1.0);

  EXPECT_THROW(transversal_cone_check(still, tri, Rational(1), Rational(1), 100, 1), PreconditionError);
  EXPECT_THROW(transversal_cone_check(still, m.category->object_index("Path"), Rational(0), Rational(1), 100, 1),
               LookupError);
}

TEST(Cones, SameSeedSameReport) {
  auto m = load_fixture("six_events");
  FilteredBrownianSheaf w{&*m.filtration, 0.7, 2.0};
  const auto tri = m.category->object_index("Triangle");
  auto a = transversal_cone_check(w, tri, Rational(0), Rational(1, 2), 2000, 42);
  auto b = transversal_cone_check(w, tri, Rational(0), Rational(1, 2), 2000, 42);
  EXPECT_EQ(a.containment, b.containment);
  EXPECT_EQ(a.record.witness, b.record.witness);
}
