#pragma once

#include "qosm/learners/model.hpp"
#include "qosm/selection/selection.hpp"

#include <map>
#include <span>
#include <vector>

namespace qosm {

/// Held-out sample of the sub-model: raw input row and its percentage error.
struct PatternSample {
    std::vector<double> input;
    double error = 0.0;
};

struct LocalErrorPattern {
    std::vector<PatternSample> entries;
};

/// One candidate learner's slot in the bucket: main-model over all data,
/// sub-model over the chronological first 70%, and the sub-model's errors
/// on the remaining 30%.
struct ModelVector {
    LearnerConfig config;
    int q = 1;
    TrainedModel main_model;
    TrainedModel sub_model;
    LocalErrorPattern pattern;
    double global_error = 0.0;
    std::vector<double> su_weights;  // per flattened input column (Eq.6)
};

/// Per-(service-instance, QoS attribute) model collection plus the local /
/// global arbitration weights.
struct Bucket {
    std::vector<ModelVector> vectors;
    double alpha = 0.1;
    double beta = 0.1;
    std::vector<PrimitiveId> schema;       // selected primitive columns
    std::map<PrimitiveId, double> su_scores;
    MetricKey qos;

    bool trained() const { return !vectors.empty(); }
};

struct BucketConfig {
    double initial_weight = 0.1;   // starting alpha and beta
    std::size_t min_samples = 4;   // so the 30% testing split is nonempty
    bool parallel_fits = true;     // candidate learners may fit concurrently
};

/// Algorithm: per candidate learner, determine q when not predefined, fit
/// main (100%) and sub (first 70%), test the sub on the rest to build the
/// local error pattern, and publish the vector. Arbitration weights carry
/// over from `prior` when present.
Bucket train_bucket(const SelectionResult& selection, const TraceLog& trace,
                    const MetricKey& qos, long end_exclusive,
                    const std::vector<LearnerConfig>& learners, const Bucket* prior,
                    const BucketConfig& cfg = {});

/// Symmetric-uncertainty weighted Euclidean distance between an input row
/// and a pattern sample.
double similarity_distance(std::span<const double> p, std::span<const double> s,
                           std::span<const double> su);

/// Learners differ in lag structure, so a bucket-level input carries one
/// row per model vector.
struct BucketInput {
    std::vector<std::vector<double>> per_vector;
};

/// Input rows for predicting the QoS at interval t (reads nothing past t).
BucketInput bucket_input_at(const Bucket& bucket, const TraceLog& trace, long t);

struct VectorEvaluation {
    double e_local = 0.0;
    double e_global = 0.0;
    double e = 0.0;             // alpha * local + beta * global
    std::size_t nearest = 0;    // index of the most similar pattern sample
    double distance = 0.0;
};

struct BucketPrediction {
    double value = 0.0;
    std::size_t chosen = 0;
    Algo chosen_algo = Algo::Armax;
    std::vector<VectorEvaluation> evaluations;
};

/// Algorithm: nearest pattern sample per vector gives the local error,
/// Eq.7 combines it with the global error, the smallest final error wins
/// (first vector on ties), and that main-model predicts.
BucketPrediction predict_with_bucket(const Bucket& bucket, const BucketInput& input);
BucketPrediction predict_with_bucket(const Bucket& bucket, const TraceLog& trace, long t);

struct ObservedSample {
    BucketInput input;
    double actual = 0.0;
};

struct WeightUpdate {
    double local_only_error = 0.0;   // e with alpha=1, beta=0
    double global_only_error = 0.0;  // e with alpha=0, beta=1
    double alpha = 0.0;              // values after the update
    double beta = 0.0;
};

/// Eq.8: whichever pure selection strategy predicted the new samples better
/// grows its weight by the error gap; ties change nothing.
WeightUpdate update_weights(Bucket& bucket, std::span<const ObservedSample> samples);

}  // namespace qosm
