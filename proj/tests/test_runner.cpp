#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qosm/run/csv.hpp"
#include "qosm/run/runner.hpp"
#include "qosm/sim/simulator.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace qosm;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("qosm-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ScenarioConfig small_scenario(std::uint64_t seed, int intervals) {
    ScenarioConfig cfg = ScenarioConfig::defaults(seed);
    cfg.services_per_vm = {3, 1};
    cfg.with_dependency = true;
    cfg.intervals = intervals;
    // compress the phases so fluctuation still covers the short run
    cfg.workload.phases[0].intervals = intervals / 4;
    cfg.workload.phases[1].intervals = intervals - intervals / 4;
    return cfg;
}

RunOptions fast_options(std::uint64_t seed = 1) {
    RunOptions options;
    options.seed = seed;
    options.eval_window = 350;
    return options;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(QOSM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
}

}  // namespace

TEST_CASE("trace CSV round-trips exactly") {
    ScenarioConfig cfg = small_scenario(5, 30);
    ScenarioOutput out = run_scenario(cfg);
    TempDir dir;
    write_trace_csv(out.trace, dir.file("trace.csv"));
    TraceLog again = read_trace_csv(dir.file("trace.csv"));
    REQUIRE(again.length() == out.trace.length());
    for (const auto& key : out.trace.keys())
        for (long t = 0; t < out.trace.end_interval(); ++t)
            REQUIRE(again.at(key, t) == out.trace.at(key, t));
}

TEST_CASE("warm start leaves early intervals unpredicted") {
    ScenarioConfig cfg = small_scenario(7, 40);
    ScenarioOutput out = run_scenario(cfg);
    RunOptions options = fast_options();
    options.learners = {Algo::Rt};
    RunArtifacts artifacts = run_online(out.topology, out.trace, options);
    REQUIRE(artifacts.report.records.size() == 40);
    for (const auto& r : artifacts.report.records) {
        if (r.interval < static_cast<long>(options.warm_start) + 1)
            CHECK(!r.predicted);
        else
            CHECK(r.predicted);
    }
}

TEST_CASE("a single configured learner is chosen at every interval") {
    ScenarioConfig cfg = small_scenario(9, 40);
    ScenarioOutput out = run_scenario(cfg);
    RunOptions options = fast_options();
    options.learners = {Algo::Armax};
    RunArtifacts artifacts = run_online(out.topology, out.trace, options);
    for (const auto& r : artifacts.report.records)
        if (r.predicted) {
            CHECK(r.chosen == "armax");
            CHECK(r.vectors.size() == 1);
        }
}

TEST_CASE("summary is recomputable from the per-interval records") {
    ScenarioConfig cfg = small_scenario(11, 50);
    ScenarioOutput out = run_scenario(cfg);
    RunOptions options = fast_options();
    options.learners = {Algo::Rt, Algo::Armax};
    options.eval_window = 20;
    RunArtifacts artifacts = run_online(out.topology, out.trace, options);

    RunSummary redo = summarize(artifacts.report.records, options.eval_window);
    CHECK(redo.smape_percent == artifacts.report.summary.smape_percent);
    CHECK(redo.mean_inputs == artifacts.report.summary.mean_inputs);
    CHECK(redo.predicted == artifacts.report.summary.predicted);
    CHECK(redo.terms_used <= 20);
}

TEST_CASE("reports round-trip through JSONL and identical runs match byte for byte") {
    ScenarioConfig cfg = small_scenario(13, 45);
    ScenarioOutput out = run_scenario(cfg);
    RunOptions options = fast_options(77);
    options.learners = {Algo::Armax, Algo::Rt};

    RunArtifacts a = run_online(out.topology, out.trace, options);
    RunArtifacts b = run_online(out.topology, out.trace, options);
    TempDir dir;
    write_report_jsonl(a.report, dir.file("a.jsonl"));
    write_report_jsonl(b.report, dir.file("b.jsonl"));
    CHECK(slurp(dir.file("a.jsonl")) == slurp(dir.file("b.jsonl")));

    RunReport parsed = read_report_jsonl(dir.file("a.jsonl"));
    CHECK(parsed.records.size() == a.report.records.size());
    CHECK(parsed.summary.smape_percent == a.report.summary.smape_percent);
    CHECK(parsed.summary.selection == "hybrid");
}

TEST_CASE("predictions never read past the predicted interval") {
    ScenarioConfig cfg = small_scenario(17, 60);
    ScenarioOutput out = run_scenario(cfg);
    const long target = 30;

    RunOptions options = fast_options(5);
    RunArtifacts full = run_online(out.topology, out.trace, options);

    // poison every value after the target interval
    TraceLog poisoned;
    for (long t = 0; t < out.trace.end_interval(); ++t) {
        IntervalTrace row;
        row.interval = t;
        for (const auto& key : out.trace.keys())
            row.values[key] = t > target ? 1e18 : out.trace.at(key, t);
        poisoned.append(row);
    }
    RunOptions stop = options;
    stop.stop_after = target;
    RunArtifacts part = run_online(out.topology, poisoned, stop);

    const auto& full_rec = full.report.records[static_cast<std::size_t>(target)];
    const auto& part_rec = part.report.records[static_cast<std::size_t>(target)];
    REQUIRE(full_rec.predicted);
    REQUIRE(part_rec.predicted);
    CHECK(full_rec.prediction == part_rec.prediction);  // bit-for-bit
    CHECK(full_rec.chosen == part_rec.chosen);
    CHECK(full_rec.selected == part_rec.selected);
    for (long t = 0; t <= target; ++t) {
        CHECK(full.report.records[static_cast<std::size_t>(t)].prediction ==
              part.report.records[static_cast<std::size_t>(t)].prediction);
    }
}

TEST_CASE("fixed selection always uses the two VM hardware inputs") {
    ScenarioConfig cfg = small_scenario(19, 40);
    ScenarioOutput out = run_scenario(cfg);
    RunOptions options = fast_options();
    options.selection = SelectionMode::Fixed;
    options.learners = {Algo::Rt};
    RunArtifacts artifacts = run_online(out.topology, out.trace, options);
    for (const auto& r : artifacts.report.records)
        if (r.predicted) {
            REQUIRE(r.selected.size() == 2);
            CHECK(r.selected[0] == "pm0/vm0:cpu");
            CHECK(r.selected[1] == "pm0/vm0:memory");
        }
    CHECK(artifacts.report.summary.mean_inputs == doctest::Approx(2.0));
}

TEST_CASE("unknown targets are rejected") {
    ScenarioConfig cfg = small_scenario(23, 30);
    ScenarioOutput out = run_scenario(cfg);
    RunOptions options = fast_options();
    options.service = {9, 9};
    CHECK_THROWS_AS(run_online(out.topology, out.trace, options), Error);
    options.service = {1, 1};
    options.qos_name = "nope";
    CHECK_THROWS_AS(run_online(out.topology, out.trace, options), Error);
}

TEST_CASE("cli pipeline: simulate, run, evaluate, inspect") {
    TempDir dir;
    std::string out = dir.path.string();
    REQUIRE(run_cli("simulate --out " + out + " --seed 3 --intervals 60") == 0);
    CHECK(fs::exists(dir.file("trace.csv")));
    CHECK(fs::exists(dir.file("topology.json")));
    CHECK(fs::exists(dir.file("ground_truth.json")));

    // repeated seed produces identical files
    TempDir dir2;
    REQUIRE(run_cli("simulate --out " + dir2.path.string() + " --seed 3 --intervals 60") ==
            0);
    CHECK(slurp(dir.file("trace.csv")) == slurp(dir2.file("trace.csv")));
    CHECK(slurp(dir.file("ground_truth.json")) == slurp(dir2.file("ground_truth.json")));

    std::string run_args = "run --trace " + dir.file("trace.csv") + " --topology " +
                           dir.file("topology.json") +
                           " --service s1.1 --qos response_time --learners rt,armax"
                           " --selection hybrid --seed 5 --out " +
                           dir.file("report.jsonl") + " --dump-models " +
                           dir.file("models");
    REQUIRE(run_cli(run_args) == 0);
    CHECK(fs::exists(dir.file("report.jsonl")));
    CHECK(fs::exists(dir.file("models/rt_main.json")));

    REQUIRE(run_cli("evaluate " + dir.file("report.jsonl") + " --out " +
                    dir.file("cmp.json")) == 0);
    CHECK(fs::exists(dir.file("cmp.json")));

    REQUIRE(run_cli("inspect-model " + dir.file("models/rt_main.json")) == 0);

    // categorized failures: bad selection flag, missing file
    CHECK(run_cli("run --trace " + dir.file("trace.csv") + " --topology " +
                  dir.file("topology.json") + " --selection bogus") != 0);
    CHECK(run_cli("evaluate /nonexistent.jsonl") != 0);
    CHECK(run_cli("simulate --out " + out + " --intervals -4") != 0);
}
