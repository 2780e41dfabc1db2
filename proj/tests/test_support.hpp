#pragma once

#include "algstoch/event_model.hpp"
#include "algstoch/model.hpp"

#include <memory>
#include <string>
#include <vector>

namespace algstoch::testing {

inline EventPtr complex_event(const std::vector<std::string>& vertices,
                              const std::vector<std::vector<std::string>>& simplices, AtomSet atoms,
                              int d_max = default_d_max) {
  return std::make_shared<const SimplicialEvent>(
      SimplicialEvent::from_complex(vertices, simplices, atoms, d_max));
}

inline EventPtr discrete_event(const std::vector<std::string>& vertices, AtomSet atoms,
                               int d_max = default_d_max) {
  return complex_event(vertices, {}, atoms, d_max);
}

inline std::string fixture_path(const std::string& name) {
  return std::string(ALGSTOCH_FIXTURE_DIR) + "/" + name + ".json";
}

inline Model load_fixture(const std::string& name) { return load_model(fixture_path(name)); }

/// Fixtures expected to pass every check.
inline const std::vector<std::string>& passing_fixtures() {
  static const std::vector<std::string> names{"minimal", "four_events", "six_events", "chain", "square", "partition"};
  return names;
}

}  // namespace algstoch::testing
