#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cslab::cli {

/// Runs one command line (without the program name) and returns the process
/// exit code. Subcommands: noise-folding, quantizer-sweep, dynamic-range,
/// rip-estimate, design-rules. See exit_code in config.hpp for failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cslab::cli
