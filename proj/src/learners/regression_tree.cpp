#include "qosm/learners/regression_tree.hpp"

#include <algorithm>
#include <cmath>

namespace qosm {

namespace {

double mean_of(const std::vector<double>& targets, const std::vector<int>& subset) {
    double s = 0.0;
    for (int i : subset) s += targets[static_cast<std::size_t>(i)];
    return subset.empty() ? 0.0 : s / static_cast<double>(subset.size());
}

bool pure(const std::vector<double>& targets, const std::vector<int>& subset) {
    for (std::size_t i = 1; i < subset.size(); ++i)
        if (targets[static_cast<std::size_t>(subset[i])] !=
            targets[static_cast<std::size_t>(subset[0])])
            return false;
    return true;
}

}  // namespace

SplitChoice best_split(const std::vector<std::vector<double>>& rows,
                       const std::vector<double>& targets,
                       const std::vector<int>& subset, int min_leaf) {
    SplitChoice best;
    if (rows.empty() || subset.size() < 2 * static_cast<std::size_t>(min_leaf)) return best;
    const std::size_t dims = rows[0].size();
    const std::size_t n = subset.size();

    std::vector<int> order(subset);
    for (std::size_t f = 0; f < dims; ++f) {
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            double va = rows[static_cast<std::size_t>(a)][f];
            double vb = rows[static_cast<std::size_t>(b)][f];
            return va != vb ? va < vb : a < b;
        });
        // prefix sums of y and y^2 in sorted order
        double left_sum = 0.0, left_sq = 0.0;
        double total_sum = 0.0, total_sq = 0.0;
        for (int i : order) {
            double y = targets[static_cast<std::size_t>(i)];
            total_sum += y;
            total_sq += y * y;
        }
        for (std::size_t k = 1; k < n; ++k) {
            double y = targets[static_cast<std::size_t>(order[k - 1])];
            left_sum += y;
            left_sq += y * y;
            if (k < static_cast<std::size_t>(min_leaf) ||
                n - k < static_cast<std::size_t>(min_leaf))
                continue;
            double lv = rows[static_cast<std::size_t>(order[k - 1])][f];
            double rv = rows[static_cast<std::size_t>(order[k])][f];
            if (!(lv < rv)) continue;  // need a genuine boundary
            double right_sum = total_sum - left_sum;
            double right_sq = total_sq - left_sq;
            double sse_l = left_sq - left_sum * left_sum / static_cast<double>(k);
            double sse_r = right_sq - right_sum * right_sum / static_cast<double>(n - k);
            double cost = sse_l + sse_r;
            if (!best.valid || cost < best.cost) {
                best.valid = true;
                best.feature = static_cast<int>(f);
                best.threshold = (lv + rv) / 2.0;
                best.cost = cost;
            }
        }
    }
    return best;
}

namespace {

int grow(RtModel& m, const std::vector<std::vector<double>>& rows,
         const std::vector<double>& targets, const std::vector<int>& subset,
         const RtConfig& cfg) {
    int idx = static_cast<int>(m.nodes.size());
    m.nodes.emplace_back();
    m.nodes[static_cast<std::size_t>(idx)].value = mean_of(targets, subset);

    if (pure(targets, subset)) return idx;
    SplitChoice split = best_split(rows, targets, subset, cfg.min_leaf);
    if (!split.valid) return idx;

    std::vector<int> left, right;
    for (int i : subset) {
        if (rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(split.feature)] <=
            split.threshold)
            left.push_back(i);
        else
            right.push_back(i);
    }
    int l = grow(m, rows, targets, left, cfg);
    int r = grow(m, rows, targets, right, cfg);
    RtNode& node = m.nodes[static_cast<std::size_t>(idx)];
    node.feature = split.feature;
    node.threshold = split.threshold;
    node.left = l;
    node.right = r;
    return idx;
}

}  // namespace

RtModel fit_rt(const TrainingSet& data, const RtConfig& cfg) {
    if (data.size() < 1)
        throw Error(Errc::insufficient_samples, "rt fit needs >= 1 row");
    RtModel m;
    m.schema = data.schema;
    std::vector<int> all(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) all[i] = static_cast<int>(i);
    grow(m, data.rows, data.targets, all, cfg);
    return m;
}

double predict(const RtModel& m, std::span<const double> input) {
    if (input.size() != m.schema.size())
        throw Error(Errc::schema_mismatch,
                    "rt input size " + std::to_string(input.size()) + ", expected " +
                        std::to_string(m.schema.size()));
    const RtNode* node = &m.nodes[0];
    while (node->feature >= 0) {
        node = input[static_cast<std::size_t>(node->feature)] <= node->threshold
                   ? &m.nodes[static_cast<std::size_t>(node->left)]
                   : &m.nodes[static_cast<std::size_t>(node->right)];
    }
    return node->value;
}

}  // namespace qosm
