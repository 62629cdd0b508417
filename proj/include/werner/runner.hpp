// Batch drivers behind the command-line tool: each command samples its
// ensemble, streams JSON-lines (or CSV) records to an output file with the
// effective configuration echoed in a header record, and reports violations
// through the exit code. All record streams are deterministic functions of
// the configuration; the header timestamp is the only non-reproducible field.
#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <string>

#include "werner/io.hpp"

namespace werner {

// Exit codes shared by run() and the command-line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;   // violation records written
inline constexpr int kExitUsage = 2;       // bad flags / bad configuration
inline constexpr int kExitInterrupted = 130;

struct RunConfig {
    std::string command;
    int d = 3;
    int samples = 0;  // sample / restart / target count; 0 picks the command default
    std::uint64_t seed = 0;
    bool seed_set = false;  // a seed must come from a flag or config file
    unsigned threads = 0;   // 0 defers to WERNER_THREADS, then 1
    std::string output_path;  // empty picks "<command>.<format>"
    std::string format = "jsonl";
    // Named overrides for the violation thresholds; unknown names are
    // configuration errors. See allowed_tolerances() for the accepted set.
    std::map<std::string, double> tolerances;

    // Command-specific knobs.
    double t_min = 0.30;   // onedistill-scan grid
    double t_max = 0.70;
    double t_step = 0.05;
    int steps = 50;        // continuation base samples per path
    bool restricted = false;  // psd-scan: diagonal-positive X stratum only
    int minor_order = 0;      // psd-scan: also check this leading principal minor
    int max_iters = 500;      // search / onedistill-scan iteration cap
    std::string traces_path;  // search: CSV trace file; empty derives from output_path
};

// Accepted keys of RunConfig::tolerances with their default values.
const std::map<std::string, double>& allowed_tolerances();

// Cooperative interruption: the CLI's SIGINT handler sets this flag and the
// drivers finish the record stream with a terminal status record.
std::atomic<bool>& interrupt_flag();

// Overlay settings from a JSON config file; flags parsed afterwards win.
void apply_config_json(RunConfig& cfg, const Json& j);

// Validate and fill per-command defaults; throws ConfigError.
void finalize_config(RunConfig& cfg);

// Execute a finalized configuration. Returns kExitPass, kExitViolation or
// kExitInterrupted; configuration problems surface as ConfigError.
int run(const RunConfig& cfg);

}  // namespace werner
