#pragma once

#include "qosm/learners/config.hpp"
#include "qosm/learners/dataset.hpp"

#include <span>
#include <vector>

namespace qosm {

/// Node of the binary regression tree. Internal nodes route x[feature]
/// <= threshold to `left`, otherwise `right`; leaves carry the mean target.
struct RtNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
};

struct RtModel {
    std::vector<SchemaEntry> schema;
    std::vector<RtNode> nodes;  // nodes[0] is the root
};

/// CART growth: each split greedily minimizes the summed squared deviation
/// of the two children; recursion stops at pure nodes or the minimum leaf
/// size. Thresholds sit midway between distinct neighboring values.
RtModel fit_rt(const TrainingSet& data, const RtConfig& cfg);

double predict(const RtModel& m, std::span<const double> input);

/// Best split of a row subset for one feature; used by the split search.
struct SplitChoice {
    bool valid = false;
    int feature = -1;
    double threshold = 0.0;
    double cost = 0.0;  // SSE(left) + SSE(right)
};

SplitChoice best_split(const std::vector<std::vector<double>>& rows,
                       const std::vector<double>& targets,
                       const std::vector<int>& subset, int min_leaf);

}  // namespace qosm
