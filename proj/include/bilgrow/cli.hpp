#pragma once

#include <iosfwd>

namespace bilgrow {

/// Exit codes of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_usage = 2 };

/// Runs one command line (argv[0] is the program name). Report text goes to
/// `out`, diagnostics to `err`; files are written only under --out.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bilgrow
