#include "qosm/sim/simulator.hpp"

#include "qosm/sim/random.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace qosm {

namespace {

// normalization constants of the interference terms (docs/simulator.md)
constexpr double kWorkloadScale = 100.0;  // req/min
constexpr double kThreadScale = 50.0;     // threads
constexpr double kCpuScale = 100.0;       // %
constexpr double kMemScale = 1024.0;      // MB
constexpr double kReliabilityThresholdMs = 30.0;
constexpr double kAvailabilityThresholdMs = 60.0;
constexpr double kIdleCpu = 3.0;          // % consumed with no load

double load_penalty(double u) { return u <= 1.0 ? u * u : 1.0 + 2.0 * (u - 1.0); }

double in_range(std::uint64_t seed, std::string_view label, const std::string& path,
                double lo, double hi) {
    return lo + (hi - lo) * unit_hash(seed, hash_label(label), hash_label(path));
}

struct ServiceSite {
    std::string path;
    std::string vm_path;
    std::string pm_path;
    Placement place;
};

ServiceSite site_of(const Topology& t, const std::string& svc_path,
                    const std::map<std::string, ServiceInstanceId>& path_to_id) {
    auto it = path_to_id.find(svc_path);
    if (it == path_to_id.end())
        throw Error(Errc::unknown_entity, "unknown service path " + svc_path);
    auto p = t.find(it->second);
    ServiceSite s;
    s.path = svc_path;
    s.place = *p;
    s.vm_path = Topology::vm_path(p->pm, p->vm);
    s.pm_path = Topology::pm_path(p->pm);
    return s;
}

}  // namespace

ScenarioConfig ScenarioConfig::defaults(std::uint64_t seed) {
    ScenarioConfig cfg;
    cfg.seed = seed;
    cfg.workload = default_workload_profile(mix64(seed ^ hash_label("workload")));
    return cfg;
}

const ScenarioConfig& validate_scenario_config(const ScenarioConfig& cfg) {
    if (cfg.intervals <= 0) throw Error(Errc::bad_config, "intervals must be positive");
    if (cfg.services_per_vm.empty())
        throw Error(Errc::bad_config, "scenario needs at least one VM");
    for (int n : cfg.services_per_vm)
        if (n < 1) throw Error(Errc::bad_config, "every VM needs at least one service");
    if (cfg.workload.phases.empty())
        throw Error(Errc::bad_config, "scenario workload has no phases");
    return cfg;
}

ScenarioConfig parse_scenario_config(const std::string& text) {
    using nlohmann::json;
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(Errc::bad_config, std::string("scenario parse: ") + e.what());
    }
    ScenarioConfig cfg = ScenarioConfig::defaults(root.value("seed", 1ULL));
    try {
        cfg.intervals = root.value("intervals", cfg.intervals);
        if (root.contains("services_per_vm"))
            cfg.services_per_vm = root.at("services_per_vm").get<std::vector<int>>();
        cfg.with_dependency = root.value("with_dependency", cfg.with_dependency);
        if (root.contains("workload")) {
            cfg.workload.phases.clear();
            for (const auto& jp : root.at("workload")) {
                WorkloadPhase phase;
                phase.intervals = jp.at("intervals").get<int>();
                std::string kind = jp.at("kind").get<std::string>();
                if (kind == "constant") {
                    phase.constant = true;
                    phase.level = jp.at("level").get<double>();
                } else if (kind == "seasonal") {
                    phase.constant = false;
                    phase.seasonal.base = jp.at("base").get<double>();
                    phase.seasonal.amplitude = jp.at("amplitude").get<double>();
                    phase.seasonal.period = jp.at("period").get<int>();
                    phase.seasonal.noise = jp.value("noise", 0.0);
                    phase.seasonal.burst_prob = jp.value("burst_prob", 0.0);
                    phase.seasonal.burst_gain = jp.value("burst_gain", 0.0);
                } else {
                    throw Error(Errc::bad_config, "unknown workload phase kind: " + kind);
                }
                cfg.workload.phases.push_back(phase);
            }
        }
    } catch (const json::exception& e) {
        throw Error(Errc::bad_config, std::string("scenario schema: ") + e.what());
    }
    return cfg;
}

std::string serialize_scenario_config(const ScenarioConfig& cfg) {
    using nlohmann::json;
    json root;
    root["intervals"] = cfg.intervals;
    root["seed"] = cfg.seed;
    root["services_per_vm"] = cfg.services_per_vm;
    root["with_dependency"] = cfg.with_dependency;
    json phases = json::array();
    for (const auto& p : cfg.workload.phases) {
        json jp;
        jp["intervals"] = p.intervals;
        if (p.constant) {
            jp["kind"] = "constant";
            jp["level"] = p.level;
        } else {
            jp["kind"] = "seasonal";
            jp["base"] = p.seasonal.base;
            jp["amplitude"] = p.seasonal.amplitude;
            jp["period"] = p.seasonal.period;
            jp["noise"] = p.seasonal.noise;
            jp["burst_prob"] = p.seasonal.burst_prob;
            jp["burst_gain"] = p.seasonal.burst_gain;
        }
        phases.push_back(std::move(jp));
    }
    root["workload"] = std::move(phases);
    return root.dump(2) + "\n";
}

SimModel build_sim_model(const ScenarioConfig& cfg) {
    validate_scenario_config(cfg);
    SimModel model;
    model.config = cfg;

    PmNode pm;
    int next_service = 1;
    for (int n : cfg.services_per_vm) {
        VmNode vm;
        vm.primitives = {{"cpu", PrimitiveKind::HardwareControl},
                         {"memory", PrimitiveKind::HardwareControl}};
        for (int k = 0; k < n; ++k) {
            ServiceNode svc;
            svc.id = {next_service++, 1};
            svc.primitives = {{"thread", PrimitiveKind::SoftwareControl},
                              {"workload", PrimitiveKind::Environmental}};
            vm.services.push_back(std::move(svc));
        }
        pm.vms.push_back(std::move(vm));
    }
    model.topology.pms.push_back(std::move(pm));
    if (cfg.with_dependency && next_service > 2)
        model.topology.dependencies.push_back(
            DependencyEdge{{1, 1}, {next_service - 1, 1}});
    validate_topology(model.topology);

    for (auto id : model.topology.all_services())
        model.path_to_id[model.topology.service_path(id)] = id;

    const std::uint64_t seed = cfg.seed;
    for (const auto& [path, id] : model.path_to_id) {
        ServiceBehavior b;
        b.seed = mix64(seed ^ hash_label(path));
        b.base_service_time_ms = in_range(seed, "base-time", path, 8.0, 20.0);
        b.cpu_demand_per_request = in_range(seed, "cpu-demand", path, 0.35, 0.6);
        b.per_thread_capacity = in_range(seed, "thread-rate", path, 1.6, 2.8);
        b.utilization_gain = in_range(seed, "util-gain", path, 0.9, 1.6);
        b.memory_gain = in_range(seed, "mem-gain", path, 0.05, 0.15);
        b.workload_scale = in_range(seed, "wl-scale", path, 0.7, 1.4);
        b.workload_wobble = 0.03;
        b.noise_ms = in_range(seed, "noise", path, 0.3, 0.8);
        b.dependency_gain = 0.0;
        model.behaviors[path] = b;
    }
    for (const auto& edge : model.topology.dependencies) {
        std::string from = model.topology.service_path(edge.from);
        model.behaviors[from].dependency_gain =
            in_range(seed, "dep-gain", from, 0.5, 0.8);
    }
    // pairwise interference coefficients
    for (const auto& [path, id] : model.path_to_id) {
        auto place = *model.topology.find(id);
        const VmNode& vm = model.topology.pms[place.pm].vms[place.vm];
        for (int s = 0; s < static_cast<int>(vm.services.size()); ++s) {
            if (s == place.svc) continue;
            std::string other = Topology::svc_path(place.pm, place.vm, s);
            model.behaviors[path].colocated_coeff[other] =
                in_range(seed, "colo", path + "|" + other, 0.02, 0.06);
        }
        const PmNode& host = model.topology.pms[place.pm];
        for (int v = 0; v < static_cast<int>(host.vms.size()); ++v) {
            if (v == place.vm) continue;
            std::string other = Topology::vm_path(place.pm, v);
            model.behaviors[path].cohosted_coeff[other] =
                in_range(seed, "cohost", path + "|" + other, 0.03, 0.07);
        }
    }
    // control schedules
    for (int p = 0; p < static_cast<int>(model.topology.pms.size()); ++p) {
        const PmNode& host = model.topology.pms[p];
        for (int v = 0; v < static_cast<int>(host.vms.size()); ++v) {
            std::string vmp = Topology::vm_path(p, v);
            ControlSchedule cpu;
            cpu.low = 25.0;
            cpu.high = 95.0;
            cpu.walk_step = 2.5;
            cpu.jump_prob = 0.025;
            cpu.initial = in_range(seed, "cpu0", vmp, 40.0, 90.0);
            model.schedules[{vmp, "cpu"}] = cpu;
            ControlSchedule mem;
            mem.low = 256.0;
            mem.high = 1024.0;
            mem.walk_step = 24.0;
            mem.jump_prob = 0.02;
            mem.initial = in_range(seed, "mem0", vmp, 384.0, 1024.0);
            model.schedules[{vmp, "memory"}] = mem;
            for (int s = 0; s < static_cast<int>(host.vms[v].services.size()); ++s) {
                std::string sp = Topology::svc_path(p, v, s);
                ControlSchedule thread;
                thread.low = 10.0;
                thread.high = 60.0;
                thread.walk_step = 1.5;
                thread.jump_prob = 0.03;
                thread.initial = in_range(seed, "thread0", sp, 15.0, 55.0);
                model.schedules[{sp, "thread"}] = thread;
            }
        }
    }
    return model;
}

QosOutputs evaluate_service_qos(const SimModel& model, const std::string& svc_path,
                                const PrimitiveLookup& values, long t) {
    auto behavior_it = model.behaviors.find(svc_path);
    if (behavior_it == model.behaviors.end())
        throw Error(Errc::unknown_entity, "no behavior for " + svc_path);
    const ServiceBehavior& b = behavior_it->second;
    ServiceSite here = site_of(model.topology, svc_path, model.path_to_id);

    auto capacity_of = [&](const std::string& path, const ServiceBehavior& sb,
                           const std::string& vm_path) {
        double threads = values(path, "thread");
        double cpu = values(vm_path, "cpu");
        double cap = std::min(threads * sb.per_thread_capacity,
                              cpu / std::max(sb.cpu_demand_per_request, 1e-9));
        return std::max(cap, 1e-9);
    };

    QosOutputs out;
    double workload = values(svc_path, "workload");
    out.capacity = capacity_of(svc_path, b, here.vm_path);
    out.throughput = std::min(workload, out.capacity);
    out.utilization = workload / out.capacity;

    double interference = 0.0;
    for (const auto& [other, coeff] : b.colocated_coeff)
        interference += coeff * (values(other, "workload") / kWorkloadScale +
                                 values(other, "thread") / kThreadScale);
    for (const auto& [vm, coeff] : b.cohosted_coeff)
        interference += coeff * (values(vm, "cpu") / kCpuScale +
                                 values(vm, "memory") / kMemScale);

    double memory_pressure =
        b.memory_gain * std::max(0.0, 1.0 - values(here.vm_path, "memory") / kMemScale);

    double dependency_load = 0.0;
    if (b.dependency_gain > 0.0) {
        for (const auto& dep : model.topology.dependencies_of(model.path_to_id.at(svc_path))) {
            std::string dep_path = model.topology.service_path(dep);
            ServiceSite dep_site = site_of(model.topology, dep_path, model.path_to_id);
            const ServiceBehavior& db = model.behaviors.at(dep_path);
            double dep_cap = capacity_of(dep_path, db, dep_site.vm_path);
            double dep_u = values(dep_path, "workload") / dep_cap;
            dependency_load += b.dependency_gain * load_penalty(dep_u);
        }
    }

    double rt = b.base_service_time_ms *
                (1.0 + b.utilization_gain * load_penalty(out.utilization) + interference +
                 memory_pressure + dependency_load);
    if (b.noise_ms > 0.0)
        rt += b.noise_ms * gauss_hash(b.seed, hash_label("rt-noise"),
                                      static_cast<std::uint64_t>(t));
    rt = std::max(rt, 0.1 * b.base_service_time_ms);

    out.response_time = rt;
    out.reliability = 100.0 * (1.0 - std::exp(-kReliabilityThresholdMs / rt));
    out.availability = 100.0 * (1.0 - std::exp(-kAvailabilityThresholdMs / rt));
    return out;
}

IntervalTrace simulate_interval(const SimModel& model,
                                const std::map<std::string, double>& workloads,
                                const std::map<MetricKey, double>& settings, long t) {
    auto setting = [&](const MetricKey& key) {
        auto it = settings.find(key);
        if (it == settings.end())
            throw Error(Errc::missing_value, "missing control setting " + key.label());
        return it->second;
    };

    IntervalTrace row;
    row.interval = t;

    // observed primitives first: thread and workload pass through, the VM cpu
    // reading saturates at the allocation
    for (int p = 0; p < static_cast<int>(model.topology.pms.size()); ++p) {
        const PmNode& host = model.topology.pms[p];
        for (int v = 0; v < static_cast<int>(host.vms.size()); ++v) {
            std::string vmp = Topology::vm_path(p, v);
            double demand = kIdleCpu;
            for (int s = 0; s < static_cast<int>(host.vms[v].services.size()); ++s) {
                std::string sp = Topology::svc_path(p, v, s);
                auto wl = workloads.find(sp);
                if (wl == workloads.end())
                    throw Error(Errc::missing_value, "missing workload for " + sp);
                demand += wl->second *
                          model.behaviors.at(sp).cpu_demand_per_request;
                row.values[{sp, "thread"}] = setting({sp, "thread"});
                row.values[{sp, "workload"}] = wl->second;
            }
            row.values[{vmp, "cpu"}] = std::min(setting({vmp, "cpu"}), demand);
            row.values[{vmp, "memory"}] = setting({vmp, "memory"});
        }
    }

    auto lookup = [&](const std::string& entity, const std::string& metric) {
        auto it = row.values.find({entity, metric});
        if (it == row.values.end())
            throw Error(Errc::missing_value, "no emitted value " + entity + ":" + metric);
        return it->second;
    };
    for (const auto& [path, id] : model.path_to_id) {
        QosOutputs q = evaluate_service_qos(model, path, lookup, t);
        row.values[{path, "response_time"}] = q.response_time;
        row.values[{path, "throughput"}] = q.throughput;
        row.values[{path, "reliability"}] = q.reliability;
        row.values[{path, "availability"}] = q.availability;
    }
    return row;
}

ScenarioOutput run_scenario(const ScenarioConfig& cfg) {
    return run_scenario_with(build_sim_model(cfg));
}

ScenarioOutput run_scenario_with(const SimModel& model) {
    const ScenarioConfig& cfg = model.config;
    validate_scenario_config(cfg);

    ScenarioOutput out;
    out.topology = model.topology;

    std::vector<double> trend = generate_workload(cfg.workload, cfg.intervals);

    // services with no inbound dependency follow the shared trend; callees
    // see a share of their callers' load instead
    std::map<std::string, std::vector<std::string>> callers;
    for (const auto& e : model.topology.dependencies)
        callers[model.topology.service_path(e.to)].push_back(
            model.topology.service_path(e.from));

    // control schedules, generated sequentially per primitive
    std::map<MetricKey, std::vector<double>> settings_series;
    for (const auto& [key, sched] : model.schedules) {
        std::vector<double> series(static_cast<std::size_t>(cfg.intervals));
        double v = sched.initial;
        std::uint64_t label = hash_label(key.label());
        for (int t = 0; t < cfg.intervals; ++t) {
            series[static_cast<std::size_t>(t)] = v;
            if (sched.frozen) continue;
            if (unit_hash(cfg.seed, label, static_cast<std::uint64_t>(t), 1) <
                sched.jump_prob) {
                v = sched.low + (sched.high - sched.low) *
                                    unit_hash(cfg.seed, label,
                                              static_cast<std::uint64_t>(t), 2);
            } else {
                v += sched.walk_step *
                     (2.0 * unit_hash(cfg.seed, label, static_cast<std::uint64_t>(t), 3) -
                      1.0);
            }
            v = std::clamp(v, sched.low, sched.high);
        }
        settings_series[key] = std::move(series);
    }

    for (int t = 0; t < cfg.intervals; ++t) {
        std::map<std::string, double> workloads;
        for (const auto& [path, id] : model.path_to_id) {
            if (callers.count(path)) continue;
            const ServiceBehavior& b = model.behaviors.at(path);
            double w = trend[static_cast<std::size_t>(t)] * b.workload_scale;
            if (b.workload_wobble > 0.0)
                w *= 1.0 + b.workload_wobble *
                               gauss_hash(b.seed, hash_label("wl-wobble"),
                                          static_cast<std::uint64_t>(t));
            workloads[path] = std::max(w, 0.0);
        }
        // callees resolve once all their callers have workloads (chains allowed)
        std::map<std::string, std::vector<std::string>> pending = callers;
        while (!pending.empty()) {
            bool progressed = false;
            for (auto it = pending.begin(); it != pending.end();) {
                const auto& [path, from] = *it;
                bool ready = true;
                for (const auto& caller : from)
                    if (!workloads.count(caller)) ready = false;
                if (!ready) {
                    ++it;
                    continue;
                }
                const ServiceBehavior& b = model.behaviors.at(path);
                double w = 0.0;
                for (const auto& caller : from) w += workloads.at(caller);
                w *= b.call_factor;
                if (b.workload_wobble > 0.0)
                    w *= 1.0 + b.workload_wobble *
                                   gauss_hash(b.seed, hash_label("wl-wobble"),
                                              static_cast<std::uint64_t>(t));
                workloads[path] = std::max(w, 0.0);
                it = pending.erase(it);
                progressed = true;
            }
            if (!progressed)
                throw Error(Errc::bad_config, "cyclic dependency chain in the scenario");
        }

        std::map<MetricKey, double> settings;
        for (const auto& [key, series] : settings_series)
            settings[key] = series[static_cast<std::size_t>(t)];

        IntervalTrace row = simulate_interval(model, workloads, settings, t);
        out.trace.append(row);
        for (const auto& [path, id] : model.path_to_id) {
            auto lookup = [&](const std::string& entity, const std::string& metric) {
                return row.values.at({entity, metric});
            };
            QosOutputs q = evaluate_service_qos(model, path, lookup, t);
            ServiceTruth& truth = out.truth[path];
            truth.capacity.push_back(q.capacity);
            truth.utilization.push_back(q.utilization);
            truth.response_time.push_back(q.response_time);
        }
    }
    return out;
}

}  // namespace qosm
