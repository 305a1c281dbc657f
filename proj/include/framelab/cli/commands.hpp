#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "framelab/cli/config.hpp"

namespace framelab::cli {

/// Runs one command; returns the process exit code.  Diagnostics go to `err`,
/// stdout output (no --out) to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Executes an already parsed configuration.  Throws on failure.
void execute(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace framelab::cli
