#pragma once

#include "qosm/core/topology.hpp"
#include "qosm/core/trace.hpp"
#include "qosm/sim/workload.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace qosm {

/// Ground-truth generator parameters of one service-instance. The closed
/// form these feed is documented in docs/simulator.md and is itself the
/// oracle the acceptance suite checks against.
struct ServiceBehavior {
    double base_service_time_ms = 10.0;
    double cpu_demand_per_request = 0.5;  // cpu % per req/min
    double per_thread_capacity = 2.0;     // req/min per configured thread
    double utilization_gain = 1.0;
    double dependency_gain = 0.0;         // applied to each dependency's load penalty
    double memory_gain = 0.0;             // pressure from scarce VM memory
    double workload_scale = 1.0;
    double workload_wobble = 0.0;         // relative sigma on the own trend
    double noise_ms = 0.0;                // response-time noise sigma
    double call_factor = 0.6;             // callees see this share of caller load
    std::map<std::string, double> colocated_coeff;  // by co-located service path
    std::map<std::string, double> cohosted_coeff;   // by co-hosted VM path
    std::uint64_t seed = 1;
};

/// Slow random walk with occasional step changes; frozen schedules hold the
/// initial value forever.
struct ControlSchedule {
    double initial = 50.0;
    double low = 0.0;
    double high = 100.0;
    double walk_step = 2.0;
    double jump_prob = 0.02;
    bool frozen = false;
};

struct ScenarioConfig {
    int intervals = 500;
    std::uint64_t seed = 1;
    std::vector<int> services_per_vm = {6, 5, 1};  // one PM, one entry per VM
    bool with_dependency = true;  // first service calls the last (db tier)
    WorkloadProfile workload;     // shared trend; filled by default_scenario_config

    static ScenarioConfig defaults(std::uint64_t seed = 1);
};

ScenarioConfig parse_scenario_config(const std::string& text);
std::string serialize_scenario_config(const ScenarioConfig& cfg);
const ScenarioConfig& validate_scenario_config(const ScenarioConfig& cfg);

/// Fully-resolved simulation state; tests may adjust behaviors or schedules
/// before running.
struct SimModel {
    ScenarioConfig config;
    Topology topology;
    std::map<std::string, ServiceBehavior> behaviors;        // by service path
    std::map<MetricKey, ControlSchedule> schedules;          // control primitives
    std::map<std::string, ServiceInstanceId> path_to_id;
};

SimModel build_sim_model(const ScenarioConfig& cfg);

/// Reads one emitted primitive value.
using PrimitiveLookup = std::function<double(const std::string& entity,
                                             const std::string& metric)>;

struct QosOutputs {
    double response_time = 0.0;
    double throughput = 0.0;
    double reliability = 0.0;
    double availability = 0.0;
    double capacity = 0.0;
    double utilization = 0.0;
};

/// The documented closed form: QoS of `svc_path` at interval t as a pure
/// function of the emitted primitive values, behaviors, and hashed noise.
QosOutputs evaluate_service_qos(const SimModel& model, const std::string& svc_path,
                                const PrimitiveLookup& values, long t);

/// One interval of the synthetic cloud: derives observed primitives from the
/// allocations and workloads, then the QoS of every service.
IntervalTrace simulate_interval(const SimModel& model,
                                const std::map<std::string, double>& workloads,
                                const std::map<MetricKey, double>& settings, long t);

struct ServiceTruth {
    std::vector<double> capacity;
    std::vector<double> utilization;
    std::vector<double> response_time;
};

struct ScenarioOutput {
    Topology topology;
    TraceLog trace;
    std::map<std::string, ServiceTruth> truth;
};

ScenarioOutput run_scenario(const ScenarioConfig& cfg);
ScenarioOutput run_scenario_with(const SimModel& model);

}  // namespace qosm
