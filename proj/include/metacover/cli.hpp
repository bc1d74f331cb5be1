#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "metacover/report.hpp"

namespace metacover {

/// Runs one subcommand. Exit status: 0 when every check passes, 1 when a
/// check fails, 2 on usage, configuration or module errors (reported as a
/// single line on `err`).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace metacover
