#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace l1dist {

enum ExitCode : int { exit_ok = 0, exit_internal = 1, exit_usage = 2 };

/**
 * Command-line entry point. args excludes the program name.
 *
 * Defaults come first, then the flat key=value file named by --config,
 * then explicit flags. Prints the table to `out` and single-line
 * diagnostics to `err`.
 */
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace l1dist
