/**
 * Command-line front end. Subcommands: threshold, check, simulate, sweep,
 * percolate. Output files start with '#' manifest lines followed by the body.
 */

#ifndef KEYGRAPH_CLI_HPP_
#define KEYGRAPH_CLI_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace keygraph::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 2,
    kNoSolution = 3,
    kScalingFailure = 4,
};

/// args excludes the program name. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Drops '#' comment lines, leaving the deterministic body.
std::string strip_manifest(std::string_view text);

/// CSV cell quoting (RFC 4180 style) for free-text fields.
std::string csv_escape(std::string_view field);

/// Fixed-point formatting used for every non-integer CSV field.
std::string fixed(double value, int decimals = 6);

}  // namespace keygraph::cli

#endif  // KEYGRAPH_CLI_HPP_
