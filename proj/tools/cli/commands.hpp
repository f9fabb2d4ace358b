#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace crowdalloc::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSanity = 1;       // a checked inequality failed
inline constexpr int kExitUsage = 2;        // bad flags or input data
inline constexpr int kExitUnsupported = 3;  // configuration refused

// Each command prints a human-readable report to `out`, writes its CSV
// output and returns an exit status. Errors propagate as exceptions.
int cmd_bound(const RunConfig& config, std::ostream& out);
int cmd_compare(const RunConfig& config, std::ostream& out);
int cmd_replay(const RunConfig& config, std::ostream& out);
int cmd_oracle(const RunConfig& config, std::ostream& out);

// Whole command line (args excludes the program name). Maps exceptions to
// exit statuses and prints usage on flag errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crowdalloc::cli
