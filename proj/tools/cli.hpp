#pragma once

#include <iosfwd>

namespace hermcubic::cli {

/// Exit codes: 0 all checks passed, 1 a check failed, 2 usage or configuration error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hermcubic::cli
