#include "qosm/learners/dataset.hpp"

#include <algorithm>
#include <limits>

namespace qosm {

TrainingSet TrainingSet::head(std::size_t n) const {
    TrainingSet out;
    out.schema = schema;
    out.rows.assign(rows.begin(), rows.begin() + static_cast<long>(std::min(n, rows.size())));
    out.targets.assign(targets.begin(),
                       targets.begin() + static_cast<long>(std::min(n, targets.size())));
    out.recompute_ranges();
    return out;
}

void TrainingSet::recompute_ranges() {
    col_min.assign(dim(), std::numeric_limits<double>::infinity());
    col_max.assign(dim(), -std::numeric_limits<double>::infinity());
    target_min = std::numeric_limits<double>::infinity();
    target_max = -std::numeric_limits<double>::infinity();
    for (const auto& row : rows)
        for (std::size_t c = 0; c < dim(); ++c) {
            col_min[c] = std::min(col_min[c], row[c]);
            col_max[c] = std::max(col_max[c], row[c]);
        }
    for (double t : targets) {
        target_min = std::min(target_min, t);
        target_max = std::max(target_max, t);
    }
    if (rows.empty()) {
        col_min.assign(dim(), 0.0);
        col_max.assign(dim(), 0.0);
        target_min = target_max = 0.0;
    }
}

LaggedSeriesTable::LaggedSeriesTable(const TraceLog& trace,
                                     std::vector<PrimitiveId> columns, MetricKey qos,
                                     long end_exclusive)
    : trace_(&trace), columns_(std::move(columns)), qos_(std::move(qos)),
      end_(std::min(end_exclusive, trace.end_interval())) {}

long LaggedSeriesTable::first_usable(int q, bool with_qos_lags) const {
    long first = trace_->first_interval();
    long need = 0;
    for (const auto& c : columns_)
        need = std::max(need, static_cast<long>(q - 1 + lag_offset(c.kind)));
    if (with_qos_lags) need = std::max(need, static_cast<long>(q));
    return first + need;
}

std::vector<SchemaEntry> LaggedSeriesTable::schema(int q, bool with_qos_lags) const {
    std::vector<SchemaEntry> out;
    for (int r = 0; r < q; ++r)
        for (const auto& c : columns_)
            out.push_back(SchemaEntry{c, r + lag_offset(c.kind), false});
    if (with_qos_lags)
        for (int r = 1; r <= q; ++r) out.push_back(SchemaEntry{{}, r, true});
    return out;
}

TrainingSet LaggedSeriesTable::make(int q, bool with_qos_lags) const {
    if (q < 1) throw Error(Errc::bad_config, "q must be >= 1");
    TrainingSet out;
    out.schema = schema(q, with_qos_lags);
    long lo = first_usable(q, with_qos_lags);
    for (long t = lo; t < end_; ++t) {
        out.rows.push_back(input_at(t, q, with_qos_lags));
        out.targets.push_back(trace_->at(qos_, t));
    }
    out.recompute_ranges();
    return out;
}

std::vector<double> LaggedSeriesTable::input_at(long t, int q, bool with_qos_lags) const {
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(q) * columns_.size() +
                (with_qos_lags ? static_cast<std::size_t>(q) : 0));
    for (int r = 0; r < q; ++r)
        for (const auto& c : columns_)
            row.push_back(trace_->at(metric_of(c), t - r - lag_offset(c.kind)));
    if (with_qos_lags)
        for (int r = 1; r <= q; ++r) row.push_back(trace_->at(qos_, t - r));
    return row;
}

std::size_t LaggedSeriesTable::rows_at(int q, bool with_qos_lags) const {
    long lo = first_usable(q, with_qos_lags);
    return lo >= end_ ? 0 : static_cast<std::size_t>(end_ - lo);
}

int LaggedSeriesTable::max_usable_q(bool with_qos_lags, std::size_t min_rows) const {
    int q = 0;
    while (rows_at(q + 1, with_qos_lags) >= min_rows) ++q;
    return q;
}

}  // namespace qosm
