#pragma once

// run / verify / sweep pipelines and their on-disk artifacts.

#include "fracctl/config.hpp"
#include "fracctl/diagnostics.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fracctl {

inline constexpr const char* kToolVersion = "fracctl 1.0.0";

enum ExitCode : int {
    exit_ok = 0,
    exit_config = 2,
    exit_diverged = 3,
    exit_hypothesis = 4,
    exit_max_iterations = 5,
};

struct RunOptions {
    std::string out_dir;
    int threads = 0;  // 0: leave the OpenMP default
    bool diagnostics = true;
    std::string command_line;
};

struct RunOutcome {
    RunStatus status = RunStatus::max_iterations;
    int iterations = 0;
    double residual = 0, boundary_error = 0, cost = 0;
    int exit_code = exit_ok;
    std::vector<std::string> files;
};

int exit_code_for(RunStatus s);

RunOutcome run_experiment(const ExperimentConfig& cfg, const RunOptions& opts, std::ostream& log);
int verify_experiment(const ExperimentConfig& cfg, const RunOptions& opts, std::ostream& log);
int sweep_experiment(const ExperimentConfig& cfg, const std::string& parameter, const std::vector<std::string>& values,
                     const RunOptions& opts, std::ostream& log);

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

}  // namespace fracctl
