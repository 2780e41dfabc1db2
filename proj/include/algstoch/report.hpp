#pragma once

// Command reports: echoed parameters, check records, computed results, and
// their JSON and plain-text renderings.

#include "algstoch/check.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace algstoch {

struct Report {
  std::string command;
  std::optional<std::string> model_hash;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  CheckList records;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();

  /// 0 when no record failed, 1 otherwise.
  int exit_code() const { return all_pass(records) ? 0 : 1; }
};

std::string render_json(const Report& r);
std::string render_text(const Report& r);

}  // namespace algstoch
