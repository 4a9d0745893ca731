#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace autdim::cli {

/// Runs one CLI invocation (args exclude the program name).
/// Exit status: 0 ok, 1 a Failed report or runtime failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace autdim::cli
