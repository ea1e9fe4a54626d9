// qosmodeler: synthesize cloud traces, run the online QoS modeling loop,
// and compare run reports.

#include "qosm/run/csv.hpp"
#include "qosm/run/runner.hpp"
#include "qosm/sim/random.hpp"
#include "qosm/sim/simulator.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using nlohmann::json;

void write_ground_truth(const qosm::ScenarioConfig& cfg, const qosm::ScenarioOutput& out,
                        const std::string& path) {
    json root;
    root["config"] = json::parse(qosm::serialize_scenario_config(cfg));
    json services;
    for (const auto& [svc, truth] : out.truth) {
        json j;
        j["capacity"] = truth.capacity;
        j["utilization"] = truth.utilization;
        j["response_time"] = truth.response_time;
        services[svc] = std::move(j);
    }
    root["services"] = std::move(services);
    std::ofstream file(path);
    if (!file) throw qosm::Error(qosm::Errc::io_error, "cannot write " + path);
    file << root.dump(2) << "\n";
}

int cmd_simulate(const std::string& out_dir, const std::string& config_path,
                 std::uint64_t seed, int intervals) {
    qosm::ScenarioConfig cfg;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw qosm::Error(qosm::Errc::io_error, "cannot open " + config_path);
        std::stringstream ss;
        ss << in.rdbuf();
        cfg = qosm::parse_scenario_config(ss.str());
        cfg.seed = seed;
        cfg.workload.seed = qosm::mix64(seed ^ qosm::hash_label("workload"));
    } else {
        cfg = qosm::ScenarioConfig::defaults(seed);
    }
    if (intervals != 0) cfg.intervals = intervals;  // 0 keeps the config value
    qosm::validate_scenario_config(cfg);

    std::filesystem::create_directories(out_dir);
    qosm::ScenarioOutput out = qosm::run_scenario(cfg);
    std::string trace_path = out_dir + "/trace.csv";
    std::string topo_path = out_dir + "/topology.json";
    std::string truth_path = out_dir + "/ground_truth.json";
    qosm::write_trace_csv(out.trace, trace_path);
    qosm::save_topology_file(out.topology, topo_path);
    write_ground_truth(cfg, out, truth_path);
    std::cout << "wrote " << trace_path << " (" << cfg.intervals << " intervals), "
              << topo_path << ", " << truth_path << "\n";
    return 0;
}

int cmd_run(const std::string& trace_path, const std::string& topo_path,
            const std::string& service, qosm::RunOptions options,
            const std::string& learner_list, const std::string& selection,
            const std::string& out_path, const std::string& dump_dir) {
    options.service = qosm::service_instance_from_label(service);
    options.selection = qosm::selection_mode_from_string(selection);
    options.learners.clear();
    std::stringstream ss(learner_list);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) options.learners.push_back(qosm::algo_from_string(tok));
    if (options.learners.empty())
        throw qosm::Error(qosm::Errc::bad_config, "no learners requested");

    qosm::Topology topology = qosm::load_topology_file(topo_path);
    qosm::TraceLog trace = qosm::read_trace_csv(trace_path);
    qosm::RunArtifacts artifacts = qosm::run_online(topology, trace, options);

    if (!out_path.empty()) qosm::write_report_jsonl(artifacts.report, out_path);
    if (!dump_dir.empty() && artifacts.final_bucket) {
        std::filesystem::create_directories(dump_dir);
        for (const auto& vec : artifacts.final_bucket->vectors) {
            qosm::save_model_file(vec.main_model,
                                  dump_dir + "/" + vec.config.name() + "_main.json");
            qosm::save_model_file(vec.sub_model,
                                  dump_dir + "/" + vec.config.name() + "_sub.json");
        }
    }

    const auto& s = artifacts.report.summary;
    std::cout << "service " << s.service << " qos " << s.qos << " selection "
              << s.selection << " learners " << s.learners << "\n";
    std::cout << "intervals " << s.intervals << " predicted " << s.predicted
              << " eval_window " << s.eval_window << "\n";
    std::cout << "smape_percent " << s.smape_percent << " mean_inputs " << s.mean_inputs
              << "\n";
    std::cerr << "wall_ms_per_interval " << artifacts.report.wall_ms_per_interval << "\n";
    return 0;
}

int cmd_evaluate(const std::vector<std::string>& report_paths, const std::string& out_path) {
    std::vector<qosm::RunReport> reports;
    for (const auto& path : report_paths) reports.push_back(qosm::read_report_jsonl(path));

    std::cout << "selection     learners        qos            seed  smape%    inputs\n";
    json rows = json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& s = reports[i].summary;
        char line[160];
        std::snprintf(line, sizeof(line), "%-13s %-15s %-14s %5llu %8.3f %8.2f",
                      s.selection.c_str(), s.learners.c_str(), s.qos.c_str(),
                      static_cast<unsigned long long>(s.seed), s.smape_percent,
                      s.mean_inputs);
        std::cout << line << "\n";
        rows.push_back(json{{"report", report_paths[i]},
                            {"selection", s.selection},
                            {"learners", s.learners},
                            {"qos", s.qos},
                            {"service", s.service},
                            {"seed", s.seed},
                            {"smape_percent", s.smape_percent},
                            {"mean_inputs", s.mean_inputs}});
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw qosm::Error(qosm::Errc::io_error, "cannot write " + out_path);
        out << rows.dump(2) << "\n";
    }
    return 0;
}

int cmd_inspect_model(const std::string& path) {
    qosm::TrainedModel model = qosm::load_model_file(path);
    std::cout << qosm::describe_model(model);
    if (qosm::serialize_model(qosm::parse_model(qosm::serialize_model(model))) !=
        qosm::serialize_model(model))
        throw qosm::Error(qosm::Errc::io_error, "model round-trip mismatch in " + path);
    std::cout << "round-trip: ok\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"online QoS modeling over cloud primitives"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "generate a synthetic trace");
    std::string sim_out = ".";
    std::string sim_config;
    std::uint64_t sim_seed = 1;
    int sim_intervals = 0;
    sim->add_option("--out", sim_out, "output directory");
    sim->add_option("--config", sim_config, "scenario config JSON");
    sim->add_option("--seed", sim_seed, "scenario seed");
    sim->add_option("--intervals", sim_intervals, "override interval count");

    // run
    auto* run = app.add_subcommand("run", "run the online modeling loop");
    std::string run_trace, run_topo, run_out, run_dump;
    std::string run_service = "s1.1";
    std::string run_learners = "armax,ann,rt";
    std::string run_selection = "hybrid";
    qosm::RunOptions options;
    run->add_option("--trace", run_trace, "trace CSV")->required();
    run->add_option("--topology", run_topo, "topology JSON")->required();
    run->add_option("--service", run_service, "target service-instance (s<i>.<j>)");
    run->add_option("--qos", options.qos_name, "QoS attribute");
    run->add_option("--learners", run_learners, "comma-separated learner list");
    run->add_option("--selection", run_selection, "hybrid|single-mr|single-mrmr|fixed");
    run->add_option("--eval-window", options.eval_window, "summary window (intervals)");
    run->add_option("--seed", options.seed, "run seed");
    run->add_option("--bins", options.bins, "discretization bins");
    run->add_option("--budget", options.budget, "mRMR search budget");
    run->add_option("--epsilon", options.epsilon, "zero threshold on relevance");
    run->add_option("--out", run_out, "report JSONL path");
    run->add_option("--dump-models", run_dump, "directory for final bucket models");

    // evaluate
    auto* eval = app.add_subcommand("evaluate", "compare run reports");
    std::vector<std::string> eval_reports;
    std::string eval_out;
    eval->add_option("reports", eval_reports, "report JSONL files")->required();
    eval->add_option("--out", eval_out, "machine-readable comparison JSON");

    // inspect-model
    auto* inspect = app.add_subcommand("inspect-model", "describe a serialized model");
    std::string inspect_path;
    inspect->add_option("model", inspect_path, "model JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(sim_out, sim_config, sim_seed, sim_intervals);
        if (run->parsed())
            return cmd_run(run_trace, run_topo, run_service, options, run_learners,
                           run_selection, run_out, run_dump);
        if (eval->parsed()) return cmd_evaluate(eval_reports, eval_out);
        if (inspect->parsed()) return cmd_inspect_model(inspect_path);
    } catch (const qosm::Error& e) {
        std::cerr << "error [" << qosm::errc_name(e.code()) << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
