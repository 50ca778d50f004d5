#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rescalc::cli {

enum exit_code : int { exit_ok = 0, exit_fail = 1, exit_input = 2 };

// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rescalc::cli
