#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace xstates::cli {

/// Exit status: 0 success, 1 failed suite or domain error, 2 usage or input error.
/// args excludes the program name. `in` backs --input when it is absent or "-".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace xstates::cli
