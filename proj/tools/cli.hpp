#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ionet::cli {

/// Runs the command line (args[0] is the program name). Exit codes: 0 on
/// success, 1 on a library error (its name goes to `err`), 2 on misuse.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ionet::cli
