#include "qosm/learners/armax.hpp"

#include "qosm/learners/linalg.hpp"

#include <cmath>

namespace qosm {

namespace {

double holdout_mse(const LaggedSeriesTable& data, int q, const ArmaxConfig& cfg) {
    TrainingSet full = data.make(q, true);
    std::size_t n = full.size();
    std::size_t split = (n * 7) / 10;
    if (split == 0 || split >= n) return std::numeric_limits<double>::infinity();
    ArmaxModel m = fit_armax_at(full.head(split), q, cfg);
    double sse = 0.0;
    for (std::size_t i = split; i < n; ++i) {
        double e = predict(m, full.rows[i]) - full.targets[i];
        sse += e * e;
    }
    return sse / static_cast<double>(n - split);
}

}  // namespace

ArmaxModel fit_armax_at(const TrainingSet& data, int q, const ArmaxConfig& cfg) {
    if (data.size() < 2)
        throw Error(Errc::insufficient_samples, "armax fit needs >= 2 rows");
    std::vector<double> beta =
        solve_least_squares(data.rows, data.targets, true, cfg.ridge);
    ArmaxModel m;
    m.schema = data.schema;
    m.q = q;
    m.coefficients.assign(beta.begin(), beta.end() - 1);
    m.intercept = beta.back();
    return m;
}

int hill_climb_armax_q(const LaggedSeriesTable& data, const ArmaxConfig& cfg) {
    int q = 1;
    double best = holdout_mse(data, 1, cfg);
    while (q < cfg.max_q) {
        int next = q + 1;
        std::size_t rows = data.rows_at(next, true);
        std::size_t params =
            static_cast<std::size_t>(next) * (data.columns().size() + 1) + 1;
        std::size_t split = (rows * 7) / 10;
        if (split <= params || split >= rows) break;
        double err = holdout_mse(data, next, cfg);
        if (std::isfinite(best) && err < best * (1.0 - cfg.improve_tol)) {
            q = next;
            best = err;
        } else {
            break;  // one non-improving step ends the climb
        }
    }
    return q;
}

ArmaxModel fit_armax(const LaggedSeriesTable& data, const ArmaxConfig& cfg) {
    int q = hill_climb_armax_q(data, cfg);
    return fit_armax_at(data.make(q, true), q, cfg);
}

double predict(const ArmaxModel& m, std::span<const double> input) {
    if (input.size() != m.schema.size())
        throw Error(Errc::schema_mismatch,
                    "armax input size " + std::to_string(input.size()) + ", expected " +
                        std::to_string(m.schema.size()));
    double y = m.intercept;
    for (std::size_t i = 0; i < input.size(); ++i) y += m.coefficients[i] * input[i];
    return y;
}

}  // namespace qosm
