#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toruswell::cli {

/// Exit codes: 0 satisfied/completed, 1 violated/infeasible, 2 usage or
/// parse error, 3 inconclusive, 4 I/O failure.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toruswell::cli
