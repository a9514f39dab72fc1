#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace unireduce {

struct SuiteFailure {
    std::uint64_t seed = 0;   // suite seed, repeated per failure for reproduction
    std::uint64_t trial = 0;  // failing trial index
    std::string check;
    std::string description;
    double measured = 0.0;
    double bound = 0.0;
};

/// Outcome of one randomized verification suite. Failures empty <=> the
/// suite passed (CLI exit 0). wall_time is reported on stderr only, so the
/// stdout JSON is byte-identical across runs and thread counts.
struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::vector<SuiteFailure> failures;
    double wall_time = 0.0;  // seconds
};

/// Known suites: "lemmas" (phase inequalities), "bounds" (defect and
/// averaging bounds), "pipeline" (end-to-end eigenvector constructions),
/// "oracle" (cross-oracle agreement and irreducibility floors).
/// Trials shard across `threads` workers; each trial derives its own RNG
/// from (seed, trial), so the report does not depend on the sharding.
SuiteReport run_suite(const std::string& suite, std::uint64_t seed, std::uint64_t trials,
                      unsigned threads = 1);

std::vector<std::string> suite_names();

}  // namespace unireduce
