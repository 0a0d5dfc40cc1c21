#pragma once

// Command drivers behind the CLI: each consumes a parsed problem file plus
// the command-line options and produces a Report.  Pure functions; all
// randomness flows from the effective seed through per-trial derived seeds,
// so a report is reproducible from (file, seed) alone.

#include <cstdint>
#include <string>

#include "bethe/io.hpp"

namespace bethe {

struct CommandOptions {
    std::string input_path;
    std::string output_path;  // empty -> stdout
    std::uint64_t seed = 0;
    bool seed_set = false;
    long trials = -1;  // negative -> file value or per-command default
    int max_a = -1;    // negative -> file value or per-command default
    int max_b = -1;
    int threads = 1;
    long budget_secs = -1;  // bench only; negative -> file value or default
};

Report run_crosscheck(const Json& problem, const CommandOptions& opt);
Report run_identities(const Json& problem, const CommandOptions& opt);
Report run_norm(const Json& problem, const CommandOptions& opt);
Report run_formfactor(const Json& problem, const CommandOptions& opt);
Report run_bench(const Json& problem, const CommandOptions& opt);

} // namespace bethe
