#pragma once
// Subcommand dispatch behind the fltz executable. Exit codes: 0 all checks
// pass, 1 a check failed, 2 bad input, 3 internal error.

#include "fltz/strata.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace fltz {

enum ExitCode { kExitPass = 0, kExitCheckFailed = 1, kExitBadInput = 2, kExitInternal = 3 };

struct RunConfig {
    // "fan check", "fan polytope", "strata", "kappa", "hom", "ext-table",
    // "glue-check", "probe", "ss-check", "morelli", "beilinson"
    std::string command;
    std::string fan_path;
    std::vector<std::string> divisor_paths;
    std::vector<long> coefficients;  // morelli class; defaults to all ones
    // open cube (lo, hi)^n; auto-sized from the divisors when absent
    std::optional<std::pair<Rat, Rat>> window;
    int max_doublings = 4;           // twist window for hom and ext-table
    unsigned seed = 7;
    int samples = 9;
    std::optional<QVec> point;
    std::string out_dir;   // also write <command>.json here
    std::string dot_path;  // fan check, strata
    std::string csv_path;  // morelli
};

// Writes the JSON result as one line to out and diagnostics to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace fltz
