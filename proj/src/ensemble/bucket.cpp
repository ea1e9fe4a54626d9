#include "qosm/ensemble/bucket.hpp"

#include "qosm/ensemble/smape.hpp"

#include <cmath>
#include <future>

namespace qosm {

namespace {

std::vector<double> su_weights_for(const std::vector<SchemaEntry>& schema,
                                   const std::map<PrimitiveId, double>& scores) {
    std::vector<double> out;
    out.reserve(schema.size());
    for (const auto& e : schema) {
        if (e.qos_lag) {
            out.push_back(1.0);  // the QoS series is fully relevant to itself
        } else {
            auto it = scores.find(e.prim);
            out.push_back(it != scores.end() ? it->second : 0.0);
        }
    }
    return out;
}

ModelVector fit_vector(const LaggedSeriesTable& table, const LearnerConfig& learner,
                       const std::map<PrimitiveId, double>& scores,
                       std::size_t min_samples) {
    ModelVector vec;
    vec.config = learner;
    vec.q = learner.fixed_q ? *learner.fixed_q
                            : hill_climb_armax_q(table, learner.armax);

    TrainingSet full = table.make(vec.q, learner.needs_qos_lags());
    if (full.size() < min_samples)
        throw Error(Errc::insufficient_samples,
                    learner.name() + " has " + std::to_string(full.size()) +
                        " usable samples, needs " + std::to_string(min_samples));

    std::size_t split = (full.size() * 7) / 10;
    vec.main_model = fit_model(full, learner);
    // structural hyperparameters (q, hidden width) are determined once per
    // interval; the sub-model trains with the main-model's structure
    if (learner.algo == Algo::Ann) {
        int hidden = std::get<AnnModel>(vec.main_model.impl).net.hidden;
        vec.sub_model = TrainedModel{
            Algo::Ann, fit_ann_at(full.head(split), hidden, learner.ann, learner.seed)};
    } else {
        vec.sub_model = fit_model(full.head(split), learner);
    }

    double sum = 0.0;
    for (std::size_t i = split; i < full.size(); ++i) {
        PatternSample sample;
        sample.input = full.rows[i];
        sample.error = ape_term(vec.sub_model.predict(full.rows[i]), full.targets[i]);
        sum += sample.error;
        vec.pattern.entries.push_back(std::move(sample));
    }
    vec.global_error = sum / static_cast<double>(vec.pattern.entries.size());
    vec.su_weights = su_weights_for(full.schema, scores);
    return vec;
}

}  // namespace

Bucket train_bucket(const SelectionResult& selection, const TraceLog& trace,
                    const MetricKey& qos, long end_exclusive,
                    const std::vector<LearnerConfig>& learners, const Bucket* prior,
                    const BucketConfig& cfg) {
    if (learners.empty()) throw Error(Errc::bad_config, "no candidate learners configured");

    Bucket bucket;
    bucket.schema = selection.columns();
    bucket.su_scores = selection.scores;
    bucket.qos = qos;
    bucket.alpha = prior ? prior->alpha : cfg.initial_weight;
    bucket.beta = prior ? prior->beta : cfg.initial_weight;

    LaggedSeriesTable table(trace, bucket.schema, qos, end_exclusive);

    if (cfg.parallel_fits && learners.size() > 1) {
        std::vector<std::future<ModelVector>> futures;
        futures.reserve(learners.size());
        for (const auto& learner : learners)
            futures.push_back(std::async(std::launch::async, [&, learner] {
                return fit_vector(table, learner, selection.scores, cfg.min_samples);
            }));
        for (auto& f : futures) bucket.vectors.push_back(f.get());
    } else {
        for (const auto& learner : learners)
            bucket.vectors.push_back(
                fit_vector(table, learner, selection.scores, cfg.min_samples));
    }
    return bucket;
}

double similarity_distance(std::span<const double> p, std::span<const double> s,
                           std::span<const double> su) {
    if (p.size() != s.size() || p.size() != su.size())
        throw Error(Errc::length_mismatch, "distance over mismatched dimensions");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double d = p[i] - s[i];
        acc += su[i] * d * d;
    }
    return std::sqrt(acc);
}

BucketInput bucket_input_at(const Bucket& bucket, const TraceLog& trace, long t) {
    BucketInput input;
    LaggedSeriesTable table(trace, bucket.schema, bucket.qos, trace.end_interval());
    input.per_vector.reserve(bucket.vectors.size());
    for (const auto& vec : bucket.vectors)
        input.per_vector.push_back(table.input_at(t, vec.q, vec.config.needs_qos_lags()));
    return input;
}

namespace {

VectorEvaluation evaluate_vector(const ModelVector& vec, std::span<const double> input,
                                 double alpha, double beta) {
    VectorEvaluation ev;
    ev.e_global = vec.global_error;
    const auto& entries = vec.pattern.entries;
    if (entries.empty())
        throw Error(Errc::insufficient_samples, "model vector has an empty error pattern");
    ev.nearest = 0;
    ev.distance = similarity_distance(input, entries[0].input, vec.su_weights);
    for (std::size_t i = 1; i < entries.size(); ++i) {
        double d = similarity_distance(input, entries[i].input, vec.su_weights);
        if (d < ev.distance) {  // strict: earliest sample wins ties
            ev.distance = d;
            ev.nearest = i;
        }
    }
    ev.e_local = entries[ev.nearest].error;
    ev.e = alpha * ev.e_local + beta * ev.e_global;
    return ev;
}

BucketPrediction arbitrate(const Bucket& bucket, const BucketInput& input, double alpha,
                           double beta) {
    if (!bucket.trained())
        throw Error(Errc::insufficient_samples, "bucket has no trained vectors");
    if (input.per_vector.size() != bucket.vectors.size())
        throw Error(Errc::schema_mismatch, "bucket input does not match vector count");

    BucketPrediction out;
    out.evaluations.reserve(bucket.vectors.size());
    for (std::size_t i = 0; i < bucket.vectors.size(); ++i) {
        VectorEvaluation ev =
            evaluate_vector(bucket.vectors[i], input.per_vector[i], alpha, beta);
        if (i == 0 || ev.e < out.evaluations[out.chosen].e) out.chosen = i;
        out.evaluations.push_back(ev);
    }
    const ModelVector& winner = bucket.vectors[out.chosen];
    out.chosen_algo = winner.config.algo;
    out.value = winner.main_model.predict(input.per_vector[out.chosen]);
    return out;
}

}  // namespace

BucketPrediction predict_with_bucket(const Bucket& bucket, const BucketInput& input) {
    return arbitrate(bucket, input, bucket.alpha, bucket.beta);
}

BucketPrediction predict_with_bucket(const Bucket& bucket, const TraceLog& trace, long t) {
    return predict_with_bucket(bucket, bucket_input_at(bucket, trace, t));
}

WeightUpdate update_weights(Bucket& bucket, std::span<const ObservedSample> samples) {
    if (!bucket.trained())
        throw Error(Errc::insufficient_samples, "bucket has no trained vectors");
    if (samples.empty()) throw Error(Errc::empty_input, "no samples for the weight update");

    double local_sum = 0.0, global_sum = 0.0;
    for (const auto& sample : samples) {
        BucketPrediction local = arbitrate(bucket, sample.input, 1.0, 0.0);
        BucketPrediction global = arbitrate(bucket, sample.input, 0.0, 1.0);
        local_sum += ape_term(local.value, sample.actual);
        global_sum += ape_term(global.value, sample.actual);
    }
    WeightUpdate upd;
    upd.local_only_error = local_sum / static_cast<double>(samples.size());
    upd.global_only_error = global_sum / static_cast<double>(samples.size());
    if (upd.local_only_error < upd.global_only_error)
        bucket.alpha += upd.global_only_error - upd.local_only_error;
    else if (upd.local_only_error > upd.global_only_error)
        bucket.beta += upd.local_only_error - upd.global_only_error;
    upd.alpha = bucket.alpha;
    upd.beta = bucket.beta;
    return upd;
}

}  // namespace qosm
