#pragma once

// The textual model format (JSON, `schema: 1`): a plain description mirroring
// the file, its canonical serializer, and the assembled runtime objects.

#include "algstoch/category.hpp"
#include "algstoch/event_model.hpp"
#include "algstoch/filtration.hpp"
#include "algstoch/sheaves.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace algstoch {

inline constexpr int model_schema_version = 1;

template <class V>
using OrderedPairs = std::vector<std::pair<std::string, V>>;

struct EventSpec {
  std::string id;
  std::vector<std::string> atoms;
  /// Ordered simplicial complex form.
  std::vector<std::string> vertices;
  std::vector<std::vector<std::string>> simplices;
  /// Explicit table form, used when `tables` is set.
  std::optional<SimplicialTables> tables;
};

struct MapSpec {
  std::string id, source, target;
  /// Either a vertex assignment or one identifier map per dimension.
  std::optional<OrderedPairs<std::string>> vertex_map;
  std::optional<std::vector<OrderedPairs<std::string>>> level_maps;
  OrderedPairs<std::string> atom_map;
};

struct MorphismSpec {
  std::string id, source, target;
  std::optional<std::string> map;
};

struct CompositionSpec {
  std::string first, second, result;
};

struct PullbackSpec {
  std::string f, g, object, first, second;
};

struct LevelSpec {
  std::string time;
  int k = 1;
  std::vector<std::string> events;
};

struct FiltrationSpec {
  std::vector<std::string> base_times;
  int fiber_resolution = 1;
  std::vector<LevelSpec> levels;
};

struct OperadSpec {
  std::string id, time;
  int k = 1;
  std::vector<std::string> inputs;
  std::string output;
};

struct PresheafSpec {
  std::string id;
  OrderedPairs<std::vector<Value>> sections;
  OrderedPairs<std::vector<std::size_t>> restrictions;
};

struct ModelSpec {
  std::string name;
  std::vector<std::string> ground_set;
  int d_max = default_d_max;
  std::vector<EventSpec> events;
  std::vector<MapSpec> maps;
  std::vector<std::string> objects;
  std::vector<MorphismSpec> morphisms;
  std::vector<CompositionSpec> composition;
  std::vector<PullbackSpec> pullbacks;
  std::optional<FiltrationSpec> filtration;
  std::vector<OperadSpec> operad;
  std::optional<OrderedPairs<double>> measure;
  std::vector<PresheafSpec> presheaves;
};

/// Syntax errors carry line and column; schema and reference errors carry the
/// JSON path of the offending entry. All problems found are reported together
/// in one ParseError.
ModelSpec parse_model(std::string_view text);
/// Canonical text: fixed key order, two-space indentation, trailing newline.
std::string serialize_model(const ModelSpec& spec);

/// FNV-1a 64-bit hash, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

struct Model {
  ModelSpec spec;
  std::string hash;
  GroundSet ground;
  std::shared_ptr<const FiniteCategory> category;
  std::optional<FilteredSigmaAlgebra> filtration;
  std::optional<ProbabilityMeasure> measure;
  std::vector<PresheafData> presheaves;

  const PresheafData& presheaf(std::string_view id) const;
  /// The declared filtration, or a single level at time 0 holding every object.
  FilteredSigmaAlgebra levels() const;
};

/// Builds the runtime objects. Structural problems surface as the library's
/// StructuralError / LookupError.
Model build_model(ModelSpec spec);
Model load_model(const std::string& path);

}  // namespace algstoch
