#pragma once

// Command-line front end. The entry point takes the argument list
// (without the program name) and explicit streams so tests can drive
// it in-process.
//
// Subcommands:
//   run      execute the configured experiment sweep, write report.csv,
//            per-curve plot data, and the resolved config to --out
//   store    store a pattern into a (possibly new) memory snapshot
//   recall   iterated recall from a snapshot for a cue literal
//   inspect  print a snapshot's header fields
//
// Exit status: 0 success, 1 usage/config/data errors, 2 recall that
// stopped at max-iters without convergence.

#include <iosfwd>
#include <string>
#include <vector>

namespace sdm {

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace sdm
