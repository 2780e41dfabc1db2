#include "algstoch/report.hpp"

namespace algstoch {

namespace {

std::string plain(const nlohmann::ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

std::string render_json(const Report& r) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  doc["command"] = r.command;
  doc["model_hash"] = r.model_hash ? nlohmann::ordered_json(*r.model_hash) : nlohmann::ordered_json(nullptr);
  doc["params"] = r.params;
  auto records = nlohmann::ordered_json::array();
  for (const auto& rec : r.records) {
    records.push_back({{"check", rec.check},
                       {"instance", rec.instance},
                       {"status", std::string(to_string(rec.status))},
                       {"witness", rec.witness}});
  }
  doc["records"] = std::move(records);
  doc["results"] = r.results;
  doc["summary"] = {{"pass", count_status(r.records, Status::pass)},
                    {"fail", count_status(r.records, Status::fail)},
                    {"info", count_status(r.records, Status::info)}};
  return doc.dump(2) + "\n";
}

std::string render_text(const Report& r) {
  std::string out = "command: " + r.command + "\n";
  if (r.model_hash) out += "model: " + *r.model_hash + "\n";
  for (const auto& [k, v] : r.params.items()) out += "param " + k + " = " + plain(v) + "\n";
  for (const auto& rec : r.records) {
    std::string status(to_string(rec.status));
    for (auto& c : status) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    out += status + "  " + rec.check + "  " + rec.instance;
    if (!rec.witness.empty()) out += "  (" + rec.witness + ")";
    out += "\n";
  }
  for (const auto& [k, v] : r.results.items()) out += k + ": " + plain(v) + "\n";
  if (!r.records.empty()) {
    out += "summary: " + std::to_string(count_status(r.records, Status::pass)) + " pass, " +
           std::to_string(count_status(r.records, Status::fail)) + " fail, " +
           std::to_string(count_status(r.records, Status::info)) + " info\n";
  }
  return out;
}

}  // namespace algstoch
