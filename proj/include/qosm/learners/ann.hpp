#pragma once

#include "qosm/learners/config.hpp"
#include "qosm/learners/dataset.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qosm {

namespace ann_detail {

/// Row-major contiguous sample block; the training loops stream it.
struct FlatRows {
    const double* data = nullptr;
    std::size_t count = 0;
    std::size_t dim = 0;

    const double* row(std::size_t i) const { return data + i * dim; }
};

/// Flat-weight feedforward net: one sigmoid hidden layer, linear output.
/// Weight layout: w1 (hidden x inputs), b1 (hidden), w2 (hidden), b2.
struct Net {
    int inputs = 0;
    int hidden = 0;
    std::vector<double> w;

    static std::size_t weight_count(int inputs, int hidden) {
        return static_cast<std::size_t>(hidden) * (inputs + 2) + 1;
    }

    double forward(std::span<const double> x) const { return forward(x.data()); }
    double forward(const double* x) const;
};

double loss(const Net& net, FlatRows rows, const double* targets);
std::vector<double> loss_gradient(const Net& net, FlatRows rows, const double* targets);

/// One fused batch pass: fills `grad` and returns the loss of the current
/// weights (identical values to calling loss then loss_gradient).
double loss_and_gradient(const Net& net, FlatRows rows, const double* targets,
                         std::vector<double>& grad);

/// Resilient backpropagation on the mean-squared loss; returns the weights
/// with the best training error seen.
Net train_rprop(Net net, FlatRows rows, const double* targets, const AnnConfig& cfg);

// convenience overloads for tests and small callers
double loss(const Net& net, const std::vector<std::vector<double>>& rows,
            const std::vector<double>& targets);
std::vector<double> loss_gradient(const Net& net,
                                  const std::vector<std::vector<double>>& rows,
                                  const std::vector<double>& targets);

Net init_net(int inputs, int hidden, double range, std::uint64_t seed);

}  // namespace ann_detail

/// Min-max scaling into [0,1]; degenerate columns keep a unit span.
struct Normalizer {
    std::vector<double> col_min, col_span;
    double target_min = 0.0, target_span = 1.0;

    static Normalizer from(const TrainingSet& data);
    std::vector<double> normalize_row(std::span<const double> raw) const;
    double normalize_target(double y) const { return (y - target_min) / target_span; }
    double denormalize_target(double u) const { return target_min + u * target_span; }
};

struct AnnModel {
    std::vector<SchemaEntry> schema;
    ann_detail::Net net;
    Normalizer norm;
};

/// Trains candidates with growing hidden-unit counts (held-out tail picks
/// the winner; training error when the dataset is too small for a split),
/// then refits the winner on every provided row.
AnnModel fit_ann(const TrainingSet& data, const AnnConfig& cfg, std::uint64_t seed);

/// Fixed hidden width, no climb; one RPROP training over every row.
AnnModel fit_ann_at(const TrainingSet& data, int hidden, const AnnConfig& cfg,
                    std::uint64_t seed);

double predict(const AnnModel& m, std::span<const double> input);

}  // namespace qosm
