#include "forage/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "forage/engine.hpp"
#include "forage/scenario_io.hpp"
#include "scenario_json.hpp"

namespace forage {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(fmt::format("cannot read {} file '{}'", what, path.string()));
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    out << contents;
}

struct TrialJob {
    Scenario scenario;
    std::optional<std::filesystem::path> trace_path;
};

MetricsReport run_job(const TrialJob& job) {
    if (!job.trace_path) return run(job.scenario);
    if (job.trace_path->has_parent_path()) std::filesystem::create_directories(job.trace_path->parent_path());
    std::ofstream trace(*job.trace_path);
    if (!trace) throw std::runtime_error(fmt::format("cannot write trace '{}'", job.trace_path->string()));
    SimOptions options;
    options.trace = &trace;
    return run(job.scenario, options);
}

std::vector<MetricsReport> run_jobs(const std::vector<TrialJob>& jobs, unsigned parallelism) {
    std::vector<MetricsReport> reports(jobs.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        while (!failed.load()) {
            const std::size_t k = next.fetch_add(1);
            if (k >= jobs.size()) return;
            try {
                reports[k] = run_job(jobs[k]);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
            }
        }
    };

    const unsigned n_threads = std::max(1u, std::min<unsigned>(parallelism, static_cast<unsigned>(jobs.size())));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> threads;
        for (unsigned t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
    return reports;
}

std::vector<TrialJob> expand(const ExperimentSuite& suite, const std::optional<std::filesystem::path>& trace_root) {
    std::vector<TrialJob> jobs;
    for (const auto& exp : suite.experiments) {
        for (std::uint32_t k = 0; k < exp.trials; ++k) {
            TrialJob job{exp.scenario, std::nullopt};
            job.scenario.name = exp.name;
            job.scenario.rng_seed = exp.base_seed + k;
            if (trace_root) job.trace_path = *trace_root / exp.name / fmt::format("{}.trace", job.scenario.rng_seed);
            jobs.push_back(std::move(job));
        }
    }
    return jobs;
}

}  // namespace

ExperimentSuite parse_suite(const std::string& json_text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(fmt::format("suite is not valid JSON: {}", e.what()));
    }
    if (!doc.is_object()) throw ValidationError("suite: expected a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key != "base_scenario" && key != "experiments") {
            throw ValidationError(fmt::format("suite: unknown field '{}'", key));
        }
    }

    Scenario base;
    if (doc.contains("base_scenario")) {
        if (!doc["base_scenario"].is_string()) throw ValidationError("base_scenario: expected a file path");
        base = load_scenario(base_dir / doc["base_scenario"].get<std::string>());
    }
    if (!doc.contains("experiments") || !doc["experiments"].is_array()) {
        throw ValidationError("experiments: expected an array");
    }

    ExperimentSuite suite;
    for (const auto& entry : doc["experiments"]) {
        if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string()) {
            throw ValidationError("experiments: every entry needs a string \"name\"");
        }
        Experiment exp;
        exp.name = entry["name"].get<std::string>();
        for (const auto& [key, value] : entry.items()) {
            if (key != "name" && key != "trials" && key != "base_seed" && key != "scenario") {
                throw ValidationError(fmt::format("experiment '{}': unknown field '{}'", exp.name, key));
            }
        }
        if (entry.contains("trials")) {
            if (!entry["trials"].is_number_unsigned()) {
                throw ValidationError(fmt::format("experiment '{}': trials must be a positive integer", exp.name));
            }
            exp.trials = entry["trials"].get<std::uint32_t>();
        }
        if (entry.contains("base_seed")) {
            if (!entry["base_seed"].is_number_unsigned()) {
                throw ValidationError(fmt::format("experiment '{}': base_seed must be a non-negative integer", exp.name));
            }
            exp.base_seed = entry["base_seed"].get<std::uint64_t>();
        }
        Scenario named = base;
        named.name = exp.name;
        exp.scenario = entry.contains("scenario") ? detail::apply_scenario_json(entry["scenario"], named) : named;
        exp.scenario.name = exp.name;
        suite.experiments.push_back(std::move(exp));
    }
    validate_suite(suite);
    return suite;
}

ExperimentSuite load_suite(const std::filesystem::path& path) {
    return parse_suite(read_file(path, "suite"), path.parent_path());
}

void validate_suite(const ExperimentSuite& suite) {
    std::set<std::string> names;
    for (const auto& exp : suite.experiments) {
        if (exp.name.empty()) throw ValidationError("experiment names must be non-empty");
        if (!names.insert(exp.name).second) {
            throw ValidationError(fmt::format("experiment name '{}' is used twice", exp.name));
        }
        if (exp.trials < 1) throw ValidationError(fmt::format("experiment '{}': trials must be >= 1", exp.name));
        validate_scenario(exp.scenario);
    }
}

std::vector<MetricsReport> run_trials(const ExperimentSuite& suite, unsigned jobs) {
    validate_suite(suite);
    return run_jobs(expand(suite, std::nullopt), jobs);
}

SuiteResult run_suite(const ExperimentSuite& suite, const SuiteOptions& options) {
    validate_suite(suite);
    std::optional<std::filesystem::path> trace_root;
    if (options.trace) trace_root = options.out_dir;

    SuiteResult result;
    result.reports = run_jobs(expand(suite, trace_root), options.jobs);

    std::size_t offset = 0;
    for (const auto& exp : suite.experiments) {
        std::span<const MetricsReport> trials(result.reports.data() + offset, exp.trials);
        offset += exp.trials;
        try {
            result.aggregates.push_back(aggregate(trials));
        } catch (const InsufficientData& e) {
            result.warnings.push_back(fmt::format("{}: aggregate skipped ({})", exp.name, e.what()));
        }
    }

    write_file(options.out_dir / "trials.csv", render_trials_csv(result.reports));
    write_file(options.out_dir / "aggregate.csv", render_aggregate_csv(result.aggregates));
    return result;
}

MetricsReport run_single(const std::filesystem::path& scenario_path, std::uint64_t seed,
                         const std::optional<std::filesystem::path>& trace_path) {
    Scenario scenario = load_scenario(scenario_path);
    scenario.rng_seed = seed;
    return run_job(TrialJob{scenario, trace_path});
}

std::string render_trials_csv(const std::vector<MetricsReport>& reports) {
    std::string out = trials_csv_header() + "\n";
    for (const auto& r : reports) out += trials_csv_row(r) + "\n";
    return out;
}

std::string render_aggregate_csv(const std::vector<AggregateStats>& aggregates) {
    std::string out = aggregate_csv_header() + "\n";
    for (const auto& a : aggregates) out += aggregate_csv_row(a) + "\n";
    return out;
}

}  // namespace forage
