#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vaplan::cli {

/// Runs one CLI invocation. Exit codes: 0 success (plan found / valid /
/// generated), 1 parse or configuration error, 2 unsolvable or invalid
/// plan, 3 diagnosed failure, 4 undiagnosed failure.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

} // namespace vaplan::cli
