#pragma once

#include "chen/pathforms.hpp"
#include "chen/paths.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace chen {

enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

/// Runs "chen <subcommand> ..." with args excluding the program name. JSON
/// goes to `out` (or the --out file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Levels 1..level of the coordinate signature as a JSON array of
/// {"level": j, "entries": {"i1,...,ij": value}}.
std::string signature_json(const Path& path, int level, QuadratureConfig q = {});

/// "csv:FILE" or comma-separated coordinate expressions in t.
Path parse_path_spec(const std::string& spec);
/// Variation fields separated by ';', each a comma list of expressions.
std::vector<Variation> parse_variations_spec(const std::string& spec);

}  // namespace chen
