#pragma once

#include "qosm/core/matrix.hpp"
#include "qosm/core/trace.hpp"

#include <string>
#include <vector>

namespace qosm {

/// One input column of a training row: a primitive at a time lag (the lag
/// already includes the environmental-primitive offset), or a lagged value
/// of the modeled QoS series itself.
struct SchemaEntry {
    PrimitiveId prim;   // unused when qos_lag
    int lag = 0;        // intervals behind the target interval
    bool qos_lag = false;

    auto operator<=>(const SchemaEntry&) const = default;

    std::string label() const {
        return (qos_lag ? "qos" : prim.label()) + "@-" + std::to_string(lag);
    }
};

struct TrainingSet {
    std::vector<SchemaEntry> schema;
    std::vector<std::vector<double>> rows;
    std::vector<double> targets;
    std::vector<double> col_min, col_max;  // observed per input column
    double target_min = 0.0, target_max = 0.0;

    std::size_t size() const { return rows.size(); }
    std::size_t dim() const { return schema.size(); }

    /// Chronological prefix of n rows (ranges recomputed).
    TrainingSet head(std::size_t n) const;
    void recompute_ranges();
};

/// Aligned per-column history for one (selection, QoS) pair; materializes
/// training sets at any lag depth q without re-reading the trace.
class LaggedSeriesTable {
public:
    LaggedSeriesTable(const TraceLog& trace, std::vector<PrimitiveId> columns,
                      MetricKey qos, long end_exclusive);

    /// Rows target qos(t) for every t in [first_usable(q), end); inputs are
    /// the flattened matrix at t plus, when requested, qos lags 1..q.
    TrainingSet make(int q, bool with_qos_lags) const;

    /// Prediction-time input row at interval t (reads nothing past t).
    std::vector<double> input_at(long t, int q, bool with_qos_lags) const;

    std::size_t rows_at(int q, bool with_qos_lags) const;
    int max_usable_q(bool with_qos_lags, std::size_t min_rows) const;

    const std::vector<PrimitiveId>& columns() const { return columns_; }
    const MetricKey& qos() const { return qos_; }
    long end_interval() const { return end_; }

private:
    long first_usable(int q, bool with_qos_lags) const;
    std::vector<SchemaEntry> schema(int q, bool with_qos_lags) const;

    const TraceLog* trace_;
    std::vector<PrimitiveId> columns_;
    MetricKey qos_;
    long end_;
};

}  // namespace qosm
