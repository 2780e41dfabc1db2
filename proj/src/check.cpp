#include "algstoch/check.hpp"

namespace algstoch {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::info:
      return "info";
  }
  return "unknown";
}

}  // namespace algstoch
