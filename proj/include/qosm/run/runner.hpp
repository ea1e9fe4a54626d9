#pragma once

#include "qosm/ensemble/bucket.hpp"
#include "qosm/run/report.hpp"

#include <optional>

namespace qosm {

enum class SelectionMode { Hybrid, SingleMr, SingleMrmr, Fixed };

const char* to_string(SelectionMode m);
SelectionMode selection_mode_from_string(const std::string& s);

struct RunOptions {
    ServiceInstanceId service{1, 1};
    std::string qos_name = "response_time";
    std::vector<Algo> learners = {Algo::Armax, Algo::Ann, Algo::Rt};
    SelectionMode selection = SelectionMode::Hybrid;
    int eval_window = 350;
    std::uint64_t seed = 1;
    int bins = 10;
    int budget = 200;
    double epsilon = 1e-9;  // zero threshold on U
    std::size_t warm_start = 8;  // usable samples before modeling begins
    int weight_window = 1;       // newest samples per Eq.8 update
    bool parallel_fits = true;
    long stop_after = -1;        // stop once this interval is predicted (< 0: run all)
};

/// Deterministic fan-out of the run seed into sub-component seeds.
std::uint64_t derive_seed(std::uint64_t base, const std::string& component);
std::vector<LearnerConfig> make_learner_configs(const RunOptions& options);

/// Per-interval input selection for one mode: hybrid splits the partitioned
/// spaces, the single-learner modes sweep the whole space, and fixed always
/// takes the hosting VM's cpu and memory.
SelectionResult select_for_mode(SelectionMode mode, const PrimitiveSpaces& spaces,
                                const Topology& topology,
                                const ServiceInstanceId& service,
                                std::span<const double> qos_history,
                                const TraceLog& trace, long end_exclusive,
                                const SelectionConfig& cfg);

struct RunArtifacts {
    RunReport report;
    std::optional<Bucket> final_bucket;
};

/// The online feedback loop: per interval, select primitives on the history,
/// update the arbitration weights on the newly observed sample, retrain the
/// bucket, and predict one interval ahead. Never reads trace values past the
/// interval being predicted.
RunArtifacts run_online(const Topology& topology, const TraceLog& trace,
                        const RunOptions& options);

}  // namespace qosm
