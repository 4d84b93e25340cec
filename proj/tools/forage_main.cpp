// forage: run single foraging trials or whole experiment suites.
//
//   forage run <scenario.json> --seed <n> [--trace <path>]
//   forage suite <suite-file> --out <dir> [--jobs <n>] [--trace]
//
// Exit codes: 0 success, 1 a trial failed, 2 usage or input error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "forage/harness.hpp"
#include "forage/metrics.hpp"
#include "forage/types.hpp"

namespace {

constexpr int kExitTrialFailure = 1;
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-robot foraging simulator with expiration-based task schedule sync"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::uint64_t seed = 0;
    std::string trace_path;
    auto* run_cmd = app.add_subcommand("run", "Run one trial of a scenario file");
    run_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    run_cmd->add_option("--seed", seed, "Placement seed")->required();
    run_cmd->add_option("--trace", trace_path, "Write per-iteration receipt lines to this file");

    std::string suite_path;
    std::string out_dir;
    unsigned jobs = 1;
    bool trace_suite = false;
    auto* suite_cmd = app.add_subcommand("suite", "Run every trial of an experiment suite");
    suite_cmd->add_option("suite", suite_path, "Suite file")->required();
    suite_cmd->add_option("--out", out_dir, "Output directory")->required();
    suite_cmd->add_option("--jobs", jobs, "Trials to run concurrently")->check(CLI::PositiveNumber);
    suite_cmd->add_flag("--trace", trace_suite, "Write <out>/<scenario>/<seed>.trace for every trial");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (*run_cmd) {
        forage::MetricsReport report;
        try {
            std::optional<std::filesystem::path> trace;
            if (!trace_path.empty()) trace = trace_path;
            report = forage::run_single(scenario_path, seed, trace);
        } catch (const forage::ValidationError& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitUsage;
        } catch (const std::runtime_error& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitUsage;
        } catch (const std::exception& e) {
            std::cerr << "trial failed: " << e.what() << '\n';
            return kExitTrialFailure;
        }
        std::cout << forage::trials_csv_header() << '\n' << forage::trials_csv_row(report) << '\n';
        return 0;
    }

    forage::ExperimentSuite suite;
    try {
        suite = forage::load_suite(suite_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    forage::SuiteOptions options;
    options.out_dir = out_dir;
    options.jobs = jobs;
    options.trace = trace_suite;
    try {
        const auto result = forage::run_suite(suite, options);
        for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
        std::cout << "wrote " << result.reports.size() << " trials to " << (options.out_dir / "trials.csv").string()
                  << '\n';
        for (const auto& agg : result.aggregates) {
            std::cout << agg.scenario << ": completions " << agg.metrics[4].mean << " +/- " << agg.metrics[4].std
                      << ", travel " << agg.metrics[0].mean << " m\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "trial failed: " << e.what() << '\n';
        return kExitTrialFailure;
    }
    return 0;
}
