#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "forage/metrics.hpp"
#include "forage/world.hpp"

namespace forage {

struct Experiment {
    std::string name;
    Scenario scenario;
    std::uint32_t trials = 1;
    std::uint64_t base_seed = 0;  // trial k runs with seed base_seed + k
};

struct ExperimentSuite {
    std::vector<Experiment> experiments;
};

/// Parses a suite document:
///
///     {
///       "base_scenario": "default.json",      // optional, relative to the suite file
///       "experiments": [
///         {"name": "exp1", "trials": 20, "base_seed": 0, "scenario": { ...overrides... }}
///       ]
///     }
///
/// Each experiment's "scenario" object overrides fields of the base scenario;
/// the experiment name becomes the scenario name.
ExperimentSuite parse_suite(const std::string& json_text, const std::filesystem::path& base_dir);

/// Reads a suite file. Throws std::runtime_error if it cannot be read and
/// ValidationError if it is malformed.
ExperimentSuite load_suite(const std::filesystem::path& path);

/// Throws ValidationError on duplicate names or zero trials.
void validate_suite(const ExperimentSuite& suite);

struct SuiteOptions {
    std::filesystem::path out_dir;
    unsigned jobs = 1;
    bool trace = false;
};

struct SuiteResult {
    std::vector<MetricsReport> reports;     // suite order, then trial order
    std::vector<AggregateStats> aggregates; // one per experiment with >= 2 trials
    std::vector<std::string> warnings;
};

/// Runs every trial (up to `jobs` at a time), then writes <out>/trials.csv
/// and <out>/aggregate.csv. With tracing, each trial also writes
/// <out>/<scenario>/<seed>.trace. A trial that throws aborts the suite with
/// that exception once the other workers have stopped.
SuiteResult run_suite(const ExperimentSuite& suite, const SuiteOptions& options);

/// Trials only, no files. Reports come back in suite order.
std::vector<MetricsReport> run_trials(const ExperimentSuite& suite, unsigned jobs);

/// One trial of the scenario file with the given seed; writes a trace file
/// when a path is given.
MetricsReport run_single(const std::filesystem::path& scenario_path, std::uint64_t seed,
                         const std::optional<std::filesystem::path>& trace_path = std::nullopt);

std::string render_trials_csv(const std::vector<MetricsReport>& reports);
std::string render_aggregate_csv(const std::vector<AggregateStats>& aggregates);

}  // namespace forage
