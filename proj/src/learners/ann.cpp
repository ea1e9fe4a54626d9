#include "qosm/learners/ann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace qosm {

namespace ann_detail {

namespace {

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

FlatRows flatten(const std::vector<std::vector<double>>& rows, std::vector<double>& buf) {
    std::size_t dim = rows.empty() ? 0 : rows[0].size();
    buf.clear();
    buf.reserve(rows.size() * dim);
    for (const auto& r : rows) buf.insert(buf.end(), r.begin(), r.end());
    return FlatRows{buf.data(), rows.size(), dim};
}

}  // namespace

double Net::forward(const double* x) const {
    const std::size_t in = static_cast<std::size_t>(inputs);
    const std::size_t h = static_cast<std::size_t>(hidden);
    const double* w1 = w.data();
    const double* b1 = w.data() + h * in;
    const double* w2 = b1 + h;
    const double b2 = w[h * (in + 2)];
    double out = b2;
    for (std::size_t j = 0; j < h; ++j) {
        double z = b1[j];
        const double* row = w1 + j * in;
        for (std::size_t i = 0; i < in; ++i) z += row[i] * x[i];
        out += w2[j] * sigmoid(z);
    }
    return out;
}

double loss(const Net& net, FlatRows rows, const double* targets) {
    double sse = 0.0;
    for (std::size_t r = 0; r < rows.count; ++r) {
        double e = net.forward(rows.row(r)) - targets[r];
        sse += e * e;
    }
    return rows.count == 0 ? 0.0 : sse / static_cast<double>(rows.count);
}

double loss_and_gradient(const Net& net, FlatRows rows, const double* targets,
                         std::vector<double>& grad) {
    const std::size_t in = static_cast<std::size_t>(net.inputs);
    const std::size_t h = static_cast<std::size_t>(net.hidden);
    const double* w1 = net.w.data();
    const double* b1 = net.w.data() + h * in;
    const double* w2 = b1 + h;
    const double b2 = net.w[h * (in + 2)];

    grad.assign(net.w.size(), 0.0);
    double* g_w1 = grad.data();
    double* g_b1 = grad.data() + h * in;
    double* g_w2 = g_b1 + h;
    double& g_b2 = grad[h * (in + 2)];

    std::vector<double> z(h);
    const double scale = rows.count == 0 ? 0.0 : 2.0 / static_cast<double>(rows.count);
    double sse = 0.0;
    for (std::size_t r = 0; r < rows.count; ++r) {
        const double* x = rows.row(r);
        double out = b2;
        for (std::size_t j = 0; j < h; ++j) {
            double pre = b1[j];
            const double* row = w1 + j * in;
            for (std::size_t i = 0; i < in; ++i) pre += row[i] * x[i];
            z[j] = sigmoid(pre);
            out += w2[j] * z[j];
        }
        double e = out - targets[r];
        sse += e * e;
        double g = scale * e;
        g_b2 += g;
        for (std::size_t j = 0; j < h; ++j) {
            g_w2[j] += g * z[j];
            double back = g * w2[j] * z[j] * (1.0 - z[j]);
            g_b1[j] += back;
            double* row = g_w1 + j * in;
            for (std::size_t i = 0; i < in; ++i) row[i] += back * x[i];
        }
    }
    return rows.count == 0 ? 0.0 : sse / static_cast<double>(rows.count);
}

std::vector<double> loss_gradient(const Net& net, FlatRows rows, const double* targets) {
    std::vector<double> grad;
    loss_and_gradient(net, rows, targets, grad);
    return grad;
}

Net init_net(int inputs, int hidden, double range, std::uint64_t seed) {
    Net net;
    net.inputs = inputs;
    net.hidden = hidden;
    net.w.resize(Net::weight_count(inputs, hidden));
    std::mt19937_64 rng(seed);
    for (double& v : net.w) {
        // uniform in [-range, range]
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        v = (2.0 * u - 1.0) * range;
    }
    return net;
}

Net train_rprop(Net net, FlatRows rows, const double* targets, const AnnConfig& cfg) {
    const std::size_t p = net.w.size();
    std::vector<double> step(p, cfg.step_init);
    std::vector<double> prev(p, 0.0);

    Net best = net;
    double best_loss = std::numeric_limits<double>::infinity();
    double plateau_mark = best_loss;  // last meaningful improvement level
    int stalled = 0;
    std::vector<double> grad;

    for (int epoch = 0; epoch < cfg.epoch_cap; ++epoch) {
        double l = loss_and_gradient(net, rows, targets, grad);
        if (l < best_loss) {
            best_loss = l;
            best = net;
        }
        if (l < plateau_mark * (1.0 - 1e-7)) {
            plateau_mark = l;
            stalled = 0;
        } else if (++stalled >= cfg.plateau_patience) {
            break;
        }
        for (std::size_t k = 0; k < p; ++k) {
            double s = grad[k] * prev[k];
            if (s > 0.0) {
                step[k] = std::min(step[k] * cfg.eta_plus, cfg.step_max);
                net.w[k] -= (grad[k] > 0.0 ? step[k] : -step[k]);
                prev[k] = grad[k];
            } else if (s < 0.0) {
                step[k] = std::max(step[k] * cfg.eta_minus, cfg.step_min);
                prev[k] = 0.0;  // skip the update after a sign flip
            } else {
                if (grad[k] > 0.0)
                    net.w[k] -= step[k];
                else if (grad[k] < 0.0)
                    net.w[k] += step[k];
                prev[k] = grad[k];
            }
        }
    }
    double final_loss = loss(net, rows, targets);
    if (final_loss < best_loss) best = net;
    return best;
}

double loss(const Net& net, const std::vector<std::vector<double>>& rows,
            const std::vector<double>& targets) {
    std::vector<double> buf;
    return loss(net, flatten(rows, buf), targets.data());
}

std::vector<double> loss_gradient(const Net& net,
                                  const std::vector<std::vector<double>>& rows,
                                  const std::vector<double>& targets) {
    std::vector<double> buf;
    return loss_gradient(net, flatten(rows, buf), targets.data());
}

}  // namespace ann_detail

Normalizer Normalizer::from(const TrainingSet& data) {
    Normalizer n;
    n.col_min = data.col_min;
    n.col_span.resize(data.dim());
    for (std::size_t c = 0; c < data.dim(); ++c) {
        double span = data.col_max[c] - data.col_min[c];
        n.col_span[c] = span > 0.0 ? span : 1.0;
    }
    n.target_min = data.target_min;
    double tspan = data.target_max - data.target_min;
    n.target_span = tspan > 0.0 ? tspan : 1.0;
    return n;
}

std::vector<double> Normalizer::normalize_row(std::span<const double> raw) const {
    std::vector<double> out(raw.size());
    for (std::size_t c = 0; c < raw.size(); ++c)
        out[c] = (raw[c] - col_min[c]) / col_span[c];
    return out;
}

namespace {

using ann_detail::FlatRows;
using ann_detail::Net;

Net train_candidate(FlatRows rows, const double* targets, int hidden, const AnnConfig& cfg,
                    std::uint64_t seed) {
    Net net = ann_detail::init_net(static_cast<int>(rows.dim), hidden, cfg.init_range,
                                   seed + 0x9e3779b97f4a7c15ULL *
                                              static_cast<std::uint64_t>(hidden));
    return ann_detail::train_rprop(std::move(net), rows, targets, cfg);
}

}  // namespace

namespace {

struct NormalizedData {
    AnnModel model;  // schema + normalizer filled, net empty
    std::vector<double> flat;
    std::vector<double> targets;

    FlatRows all() const { return {flat.data(), targets.size(), model.schema.size()}; }
};

NormalizedData prepare(const TrainingSet& data) {
    if (data.size() < 2)
        throw Error(Errc::insufficient_samples, "ann fit needs >= 2 rows");
    NormalizedData nd;
    nd.model.schema = data.schema;
    nd.model.norm = Normalizer::from(data);
    nd.flat.reserve(data.size() * data.dim());
    for (const auto& r : data.rows)
        for (std::size_t c = 0; c < data.dim(); ++c)
            nd.flat.push_back((r[c] - nd.model.norm.col_min[c]) / nd.model.norm.col_span[c]);
    nd.targets.reserve(data.size());
    for (double t : data.targets) nd.targets.push_back(nd.model.norm.normalize_target(t));
    return nd;
}

}  // namespace

AnnModel fit_ann_at(const TrainingSet& data, int hidden, const AnnConfig& cfg,
                    std::uint64_t seed) {
    NormalizedData nd = prepare(data);
    nd.model.net = train_candidate(nd.all(), nd.targets.data(), hidden, cfg, seed);
    return std::move(nd.model);
}

AnnModel fit_ann(const TrainingSet& data, const AnnConfig& cfg, std::uint64_t seed) {
    NormalizedData nd = prepare(data);
    AnnModel& m = nd.model;

    const std::size_t n = data.size();
    const std::size_t dim = data.dim();
    const std::vector<double>& flat = nd.flat;
    const std::vector<double>& targets = nd.targets;

    FlatRows all = nd.all();

    // candidates train on the chronological first 70% and compete on the
    // held-out tail; datasets too small for a meaningful split compete on
    // training error over all rows instead
    std::size_t split = (n * 7) / 10;
    bool use_holdout = split >= 4 && n - split >= 3;
    FlatRows train = use_holdout ? FlatRows{flat.data(), split, dim} : all;
    auto candidate_error = [&](const Net& net) {
        std::size_t from = use_holdout ? split : 0;
        double sse = 0.0;
        for (std::size_t i = from; i < n; ++i) {
            double e = net.forward(all.row(i)) - targets[i];
            sse += e * e;
        }
        return sse / static_cast<double>(n - from);
    };

    int best_hidden = 1;
    double best_err = candidate_error(train_candidate(train, targets.data(), 1, cfg, seed));
    for (int h = 2; h <= cfg.max_hidden; ++h) {
        double err = candidate_error(train_candidate(train, targets.data(), h, cfg, seed));
        if (err < best_err * (1.0 - cfg.improve_tol)) {
            best_err = err;
            best_hidden = h;
        } else {
            break;  // one non-improving step ends the climb
        }
    }

    m.net = train_candidate(all, targets.data(), best_hidden, cfg, seed);
    return std::move(m);
}

double predict(const AnnModel& m, std::span<const double> input) {
    if (input.size() != m.schema.size())
        throw Error(Errc::schema_mismatch,
                    "ann input size " + std::to_string(input.size()) + ", expected " +
                        std::to_string(m.schema.size()));
    std::vector<double> x = m.norm.normalize_row(input);
    return m.norm.denormalize_target(m.net.forward(x.data()));
}

}  // namespace qosm
