#pragma once

#include <iosfwd>

namespace algstoch::cli {

/// Runs one command line. Returns 0 when every check passed, 1 when a check
/// failed, 2 on usage, parse or model errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace algstoch::cli
