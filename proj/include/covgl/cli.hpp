#pragma once

// Command-line driver surface: a RunConfig describes one reproducible
// verification run; run() executes it and renders text, JSON, or CSV.
// JSON schema: {command, params, checks: [{anchor, status, detail}],
// elapsed_ms}; exit code 0 when every check passes, 1 on a verification
// mismatch, 2 on unusable configuration.

#include "covgl/report.hpp"

#include <cstdint>
#include <string>

namespace covgl {

struct RunConfig {
    enum class Command { Pair, Orbits, Whittaker, VerifyTheta, VerifyRank2, Counterexample };
    enum class Format { Text, Json, Csv };

    Command command = Command::Pair;
    int n = 3;
    long p = 0;
    long q = 1;
    int r = 2;
    int trunc = 0; // 0 selects the command default (3 n_alpha, 4 n_alpha for rank 2)
    int samples = 20;
    std::uint64_t seed = 1;
    Format format = Format::Text;
    bool timing = false; // real elapsed_ms breaks byte-reproducibility; off by default
};

struct RunResult {
    int exit_code = 0;
    std::string output;
};

RunResult run(const RunConfig& config);

const char* command_name(RunConfig::Command c);

} // namespace covgl
