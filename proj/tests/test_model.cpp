#include "algstoch/errors.hpp"
#include "algstoch/model.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace algstoch;
using algstoch::testing::fixture_path;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* const minimal_text = R"({
  "schema": 1,
  "ground_set": ["w"],
  "events": [
    {"id": "Empty", "atoms": [], "vertices": [], "simplices": []},
    {"id": "Omega", "atoms": ["w"], "vertices": ["w"], "simplices": []}
  ],
  "category": {"objects": ["Empty", "Omega"], "morphisms": [{"id": "i", "source": "Empty", "target": "Omega"}]},
  "measure": {"w": 1}
})";

std::string parse_error_of(const std::string& text) {
  try {
    parse_model(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(ModelFormat, BundledFixturesRoundTripByteForByte) {
  std::size_t count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(ALGSTOCH_FIXTURE_DIR)) {
    if (entry.path().extension() != ".json") continue;
    const auto text = slurp(entry.path().string());
    EXPECT_EQ(serialize_model(parse_model(text)), text) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 5u);
}

TEST(ModelFormat, MinimalModelParsesAndCanonicalizes) {
  auto spec = parse_model(minimal_text);
  EXPECT_EQ(spec.ground_set, std::vector<std::string>{"w"});
  EXPECT_EQ(spec.d_max, default_d_max);
  const auto canonical = serialize_model(spec);
  EXPECT_EQ(serialize_model(parse_model(canonical)), canonical);
  auto model = build_model(spec);
  EXPECT_EQ(model.category->object_count(), 2u);
  EXPECT_EQ(model.hash, fnv1a_hex(canonical));
  EXPECT_EQ(model.hash.size(), 16u);
}

TEST(ModelFormat, FnvReferenceValues) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(ModelFormat, CategoryObjectWithoutEventIsNamed) {
  const auto err = parse_error_of(R"({"schema": 1, "ground_set": ["w"], "events": [],
      "category": {"objects": ["Omega"], "morphisms": []}})");
  EXPECT_NE(err.find("/category/objects/0"), std::string::npos) << err;
  EXPECT_NE(err.find("'Omega'"), std::string::npos) << err;
}

TEST(ModelFormat, MeasureMustSumToOne) {
  std::string text = minimal_text;
  text.replace(text.find("\"w\": 1}"), 7, "\"w\": 0.9}");
  const auto err = parse_error_of(text);
  EXPECT_NE(err.find("/measure"), std::string::npos) << err;
  EXPECT_NE(err.find("0.9"), std::string::npos) << err;
}

TEST(ModelFormat, SyntaxErrorsCarryLineAndColumn) {
  const auto err = parse_error_of("{\n  \"schema\": 1,\n  \"ground_set\": [\"w\",]\n}");
  EXPECT_NE(err.find("line 3"), std::string::npos) << err;
  EXPECT_NE(err.find("column"), std::string::npos) << err;
}

TEST(ModelFormat, SchemaProblemsAreCollected) {
  const auto err = parse_error_of(R"({"schema": 2, "ground_set": "w", "events": [], "category": {"objects": []},
      "extras": 1})");
  EXPECT_NE(err.find("/schema"), std::string::npos);
  EXPECT_NE(err.find("/ground_set: expected an array"), std::string::npos);
  EXPECT_NE(err.find("/extras: unknown section"), std::string::npos);
}

TEST(ModelFormat, UnknownReferencesAreNamed) {
  std::string text = minimal_text;
  text.replace(text.find("\"target\": \"Omega\""), 17, "\"target\": \"Nowhere\"");
  EXPECT_NE(parse_error_of(text).find("unknown object 'Nowhere'"), std::string::npos);
}

TEST(ModelFormat, ExplicitTablesBuildTheSameEventAsTheComplex) {
  auto model = algstoch::testing::load_fixture("minimal");
  const auto& omega = *model.category->event(model.category->object_index("Omega"));
  auto complex = SimplicialEvent::from_complex({"w"}, {}, model.ground.full());
  EXPECT_EQ(omega, complex);
}

TEST(ModelFormat, StructuralProblemsSurfaceWhenBuilding) {
  auto spec = parse_model(minimal_text);
  // The inclusion Empty -> Omega no longer maps atoms into atoms.
  spec.events[0].atoms = {"w"};
  spec.events[1].atoms = {};
  EXPECT_THROW(build_model(spec), Error);
}

TEST(ModelFormat, LoadReportsThePath) {
  try {
    load_model(fixture_path("does_not_exist"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("does_not_exist.json"), std::string::npos);
  }
}
