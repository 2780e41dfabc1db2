#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace algstoch {

enum class Status { pass, fail, info };

std::string_view to_string(Status status);

/// One verified instance. `check` names the law, `instance` the concrete
/// objects/morphisms it was evaluated on, `witness` the evidence.
struct CheckRecord {
  std::string check;
  std::string instance;
  Status status = Status::pass;
  std::string witness;
};

using CheckList = std::vector<CheckRecord>;

inline bool all_pass(const CheckList& records) {
  return std::none_of(records.begin(), records.end(),
                      [](const CheckRecord& r) { return r.status == Status::fail; });
}

inline std::size_t count_status(const CheckList& records, Status status) {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [status](const CheckRecord& r) { return r.status == status; }));
}

inline std::vector<CheckRecord> failures(const CheckList& records) {
  std::vector<CheckRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [](const CheckRecord& r) { return r.status == Status::fail; });
  return out;
}

inline void append(CheckList& into, const CheckList& from) {
  into.insert(into.end(), from.begin(), from.end());
}

inline CheckRecord make_record(std::string check, std::string instance, bool ok,
                               std::string witness = {}) {
  return CheckRecord{std::move(check), std::move(instance), ok ? Status::pass : Status::fail,
                     std::move(witness)};
}

}  // namespace algstoch
