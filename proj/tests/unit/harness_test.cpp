#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "forage/harness.hpp"
#include "forage/scenario_io.hpp"

using namespace forage;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("forage_test_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

struct CliResult {
    int exit_code;
    std::string err;
};

CliResult run_cli(const std::string& args, const fs::path& scratch) {
    const auto err_file = scratch / "stderr.txt";
    const std::string cmd =
        std::string(FORAGE_CLI_PATH) + " " + args + " > " + (scratch / "stdout.txt").string() + " 2> " + err_file.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(err_file)};
}

std::size_t count_lines(const std::string& text) {
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("shipped experiment suite") {
    const auto suite = load_suite(FORAGE_SCENARIO_DIR "/expiration_study.suite");
    REQUIRE(suite.experiments.size() == 6);
    std::size_t trials = 0;
    for (const auto& e : suite.experiments) {
        CHECK(e.trials == 20);
        CHECK(e.scenario.name == e.name);
        CHECK(e.scenario.n_robots == 5);
        CHECK(e.scenario.iterations == 10000);
        trials += e.trials;
    }
    CHECK(trials == 120);

    const auto& exp4 = suite.experiments[3];
    CHECK(exp4.scenario.sensing_range == 5.0);
    CHECK_FALSE(exp4.scenario.expiration_enabled);
    CHECK(exp4.scenario.treasures.size() == 5);
    CHECK(suite.experiments[4].scenario.treasures.size() == 2);
}

TEST_CASE("suite parsing errors") {
    TempDir tmp;
    write_file(tmp.path / "base.json", R"({"iterations": 50})");
    const auto ok = parse_suite(
        R"({"base_scenario": "base.json", "experiments": [{"name": "a", "trials": 2, "scenario": {"n_robots": 3}}]})",
        tmp.path);
    REQUIRE(ok.experiments.size() == 1);
    CHECK(ok.experiments[0].scenario.iterations == 50);
    CHECK(ok.experiments[0].scenario.n_robots == 3);

    CHECK_THROWS_AS(parse_suite(R"({"experiments": [{"name": "a", "trials": 0}]})", tmp.path), ValidationError);
    CHECK_THROWS_AS(parse_suite(R"({"experiments": [{"name": "a"}, {"name": "a"}]})", tmp.path), ValidationError);
    CHECK_THROWS_AS(parse_suite(R"({"experiments": [{"name": "a", "extra": 1}]})", tmp.path), ValidationError);
    CHECK_THROWS_WITH_AS(
        parse_suite(R"({"experiments": [{"name": "a", "scenario": {"sensing_range": -1}}]})", tmp.path),
        doctest::Contains("sensing_range"), ValidationError);
    CHECK_THROWS_AS(load_suite(tmp.path / "missing.suite"), std::runtime_error);
}

TEST_CASE("run_suite writes CSVs, warns on single trials and reruns byte-identically") {
    TempDir tmp;
    ExperimentSuite suite;
    Scenario sc;
    sc.iterations = 400;
    suite.experiments.push_back({"pair", sc, 3, 10});
    suite.experiments.push_back({"solo", sc, 1, 0});
    for (auto& e : suite.experiments) e.scenario.name = e.name;

    SuiteOptions opts;
    opts.out_dir = tmp.path / "a";
    opts.jobs = 3;
    const auto result = run_suite(suite, opts);
    REQUIRE(result.reports.size() == 4);
    CHECK(result.reports[0].seed == 10);
    CHECK(result.reports[2].seed == 12);
    CHECK(result.reports[3].scenario == "solo");
    CHECK(result.aggregates.size() == 1);
    REQUIRE(result.warnings.size() == 1);
    CHECK(result.warnings[0].find("solo") != std::string::npos);

    const auto trials = slurp(opts.out_dir / "trials.csv");
    CHECK(count_lines(trials) == 5);
    CHECK(count_lines(slurp(opts.out_dir / "aggregate.csv")) == 2);

    opts.out_dir = tmp.path / "b";
    opts.jobs = 1;
    run_suite(suite, opts);
    CHECK(slurp(opts.out_dir / "trials.csv") == trials);
    CHECK(slurp(opts.out_dir / "aggregate.csv") == slurp(tmp.path / "a" / "aggregate.csv"));
}

TEST_CASE("suite tracing writes one file per trial") {
    TempDir tmp;
    ExperimentSuite suite;
    Scenario sc;
    sc.iterations = 20;
    sc.name = "traced";
    suite.experiments.push_back({"traced", sc, 2, 5});
    SuiteOptions opts;
    opts.out_dir = tmp.path;
    opts.trace = true;
    run_suite(suite, opts);
    CHECK(fs::exists(tmp.path / "traced" / "5.trace"));
    CHECK(fs::exists(tmp.path / "traced" / "6.trace"));
}

TEST_CASE("command line") {
    TempDir tmp;
    const auto scenario = (FORAGE_SCENARIO_DIR "/default.json");

    SUBCASE("unknown flag") {
        CHECK(run_cli(std::string("run ") + scenario + " --seed 1 --bogus", tmp.path).exit_code == 2);
    }
    SUBCASE("missing subcommand") { CHECK(run_cli("", tmp.path).exit_code == 2); }
    SUBCASE("unreadable scenario") {
        CHECK(run_cli("run /nonexistent/x.json --seed 1", tmp.path).exit_code == 2);
    }
    SUBCASE("invalid field is named") {
        write_file(tmp.path / "bad.json", R"({"sensing_range": -1})");
        const auto r = run_cli("run " + (tmp.path / "bad.json").string() + " --seed 1", tmp.path);
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("sensing_range") != std::string::npos);
    }
    SUBCASE("trace of a short two-robot run") {
        write_file(tmp.path / "small.json", R"({"n_robots": 2, "iterations": 100})");
        const auto trace = tmp.path / "run.trace";
        const auto r =
            run_cli("run " + (tmp.path / "small.json").string() + " --seed 3 --trace " + trace.string(), tmp.path);
        REQUIRE(r.exit_code == 0);
        const auto text = slurp(trace);
        std::istringstream in(text);
        std::string line;
        std::size_t receipts = 0;
        while (std::getline(in, line)) {
            if (line.find(" robot=") != std::string::npos) ++receipts;
        }
        CHECK(receipts <= 200);
        CHECK(receipts > 0);
        const auto out = slurp(tmp.path / "stdout.txt");
        CHECK(out.rfind("scenario,seed,", 0) == 0);
        CHECK(out.find("\nsmall,3,") != std::string::npos);
    }
}
