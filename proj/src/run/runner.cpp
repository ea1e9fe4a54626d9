#include "qosm/run/runner.hpp"

#include "qosm/ensemble/smape.hpp"
#include "qosm/sim/random.hpp"

#include <chrono>
#include <deque>

namespace qosm {

const char* to_string(SelectionMode m) {
    switch (m) {
        case SelectionMode::Hybrid: return "hybrid";
        case SelectionMode::SingleMr: return "single-mr";
        case SelectionMode::SingleMrmr: return "single-mrmr";
        case SelectionMode::Fixed: return "fixed";
    }
    return "?";
}

SelectionMode selection_mode_from_string(const std::string& s) {
    if (s == "hybrid") return SelectionMode::Hybrid;
    if (s == "single-mr") return SelectionMode::SingleMr;
    if (s == "single-mrmr") return SelectionMode::SingleMrmr;
    if (s == "fixed") return SelectionMode::Fixed;
    throw Error(Errc::bad_config, "unknown selection mode: " + s);
}

std::uint64_t derive_seed(std::uint64_t base, const std::string& component) {
    return mix64(base ^ hash_label(component));
}

std::vector<LearnerConfig> make_learner_configs(const RunOptions& options) {
    std::vector<LearnerConfig> out;
    for (Algo algo : options.learners)
        out.push_back(LearnerConfig::make(
            algo, derive_seed(options.seed, std::string("learner-") + to_string(algo))));
    return out;
}

namespace {

std::vector<PrimitiveId> fixed_columns(const Topology& topology,
                                       const ServiceInstanceId& service) {
    auto place = topology.find(service);
    if (!place) throw Error(Errc::unknown_entity, "unknown service " + service.label());
    std::string vm_path = Topology::vm_path(place->pm, place->vm);
    std::vector<PrimitiveId> out;
    for (const auto& d : topology.pms[place->pm].vms[place->vm].primitives)
        out.push_back({vm_path, d.name, d.kind});
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

SelectionResult select_for_mode(SelectionMode mode, const PrimitiveSpaces& spaces,
                                const Topology& topology,
                                const ServiceInstanceId& service,
                                std::span<const double> qos_history,
                                const TraceLog& trace, long end_exclusive,
                                const SelectionConfig& cfg) {
    SelectionResult result;
    switch (mode) {
        case SelectionMode::Hybrid:
            return hybrid_select(spaces, qos_history, trace, end_exclusive, cfg);
        case SelectionMode::SingleMr:
            result.direct_selected = select_direct(spaces.all(), qos_history, trace,
                                                   end_exclusive, cfg, &result.scores);
            return result;
        case SelectionMode::SingleMrmr:
            result.indirect_selected = select_indirect(spaces.all(), qos_history, trace,
                                                       end_exclusive, cfg, &result.scores);
            return result;
        case SelectionMode::Fixed: {
            auto columns = fixed_columns(topology, service);
            for (const auto& col : columns) {
                auto series = trace.series_until(metric_of(col), end_exclusive);
                result.scores[col] =
                    symmetric_uncertainty(series, qos_history, cfg.relevance.bins);
            }
            result.direct_selected = columns;
            return result;
        }
    }
    return result;
}

RunArtifacts run_online(const Topology& topology, const TraceLog& trace,
                        const RunOptions& options) {
    validate_topology(topology);
    std::string svc_path = topology.service_path(options.service);
    QoSAttributeSpec qos = qos_spec(options.qos_name);
    MetricKey qos_key{svc_path, qos.name};
    if (!trace.has(qos_key))
        throw Error(Errc::missing_value, "trace has no series " + qos_key.label());

    PrimitiveSpaces spaces = partition(topology, options.service);
    std::vector<LearnerConfig> learners = make_learner_configs(options);

    SelectionConfig selcfg;
    selcfg.relevance.bins = options.bins;
    selcfg.relevance.epsilon = options.epsilon;
    selcfg.budget = options.budget;
    selcfg.seed = derive_seed(options.seed, "selection");

    BucketConfig bucketcfg;
    bucketcfg.parallel_fits = options.parallel_fits;

    RunArtifacts artifacts;
    std::optional<Bucket> bucket;
    std::deque<ObservedSample> pending;

    long predicted = 0;
    double term_sum = 0.0;
    long term_count = 0;

    auto start = std::chrono::steady_clock::now();
    for (long t = trace.first_interval(); t < trace.end_interval(); ++t) {
        IntervalRecord record;
        record.interval = t;

        // warm start: one EP lag plus q=1 leaves (history - 1) usable samples
        long history = t - trace.first_interval();
        if (history < static_cast<long>(options.warm_start) + 1) {
            artifacts.report.records.push_back(std::move(record));
            continue;
        }

        if (bucket && !pending.empty()) {
            std::vector<ObservedSample> window(pending.begin(), pending.end());
            update_weights(*bucket, window);
            pending.clear();
        }

        auto qos_history = trace.series_until(qos_key, t);
        SelectionResult selection = select_for_mode(options.selection, spaces, topology,
                                                    options.service, qos_history, trace,
                                                    t, selcfg);
        Bucket next = train_bucket(selection, trace, qos_key, t, learners,
                                   bucket ? &*bucket : nullptr, bucketcfg);

        BucketInput input = bucket_input_at(next, trace, t);
        BucketPrediction prediction = predict_with_bucket(next, input);
        double actual = trace.at(qos_key, t);

        record.predicted = true;
        for (const auto& col : next.schema) record.selected.push_back(col.label());
        record.chosen = to_string(prediction.chosen_algo);
        record.prediction = prediction.value;
        record.actual = actual;
        record.err_term = ape_term(prediction.value, actual);
        record.alpha = next.alpha;
        record.beta = next.beta;
        for (std::size_t i = 0; i < prediction.evaluations.size(); ++i) {
            const auto& ev = prediction.evaluations[i];
            record.vectors.push_back(VectorRecord{next.vectors[i].config.name(),
                                                  ev.e_local, ev.e_global, ev.e});
        }
        if (prediction.value + actual > 0.0) {
            term_sum += record.err_term;
            ++term_count;
        }
        record.running_smape =
            term_count > 0 ? 100.0 * term_sum / static_cast<double>(term_count) : 0.0;
        ++predicted;
        artifacts.report.records.push_back(std::move(record));

        pending.push_back(ObservedSample{std::move(input), actual});
        while (pending.size() > static_cast<std::size_t>(std::max(options.weight_window, 1)))
            pending.pop_front();
        bucket = std::move(next);

        if (options.stop_after >= 0 && t >= options.stop_after) break;
    }
    auto elapsed = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();

    artifacts.report.summary = summarize(artifacts.report.records, options.eval_window);
    artifacts.report.summary.service = options.service.label();
    artifacts.report.summary.qos = qos.name;
    artifacts.report.summary.selection = to_string(options.selection);
    std::string names;
    for (const auto& cfg : learners) names += (names.empty() ? "" : ",") + cfg.name();
    artifacts.report.summary.learners = names;
    artifacts.report.summary.seed = options.seed;
    artifacts.report.wall_ms_per_interval =
        predicted > 0 ? elapsed / static_cast<double>(predicted) : 0.0;
    artifacts.final_bucket = std::move(bucket);
    return artifacts;
}

}  // namespace qosm
