#pragma once

// Command-line front end. run_cli() takes the arguments after the program
// name so it can be driven in-process by tests.

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperseries::cli {

enum ExitCode : int { ok = 0, invalid_input = 2, contract_violation = 3, numeric_failure = 4 };

int run_cli(std::vector<std::string> args, std::ostream &out, std::ostream &err);

} // namespace hyperseries::cli
