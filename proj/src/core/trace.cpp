#include "qosm/core/trace.hpp"

namespace qosm {

void TraceLog::append(const IntervalTrace& row) {
    if (length_ == 0) {
        first_ = row.interval;
        for (const auto& [key, value] : row.values) {
            index_.emplace(key, columns_.size());
            columns_.emplace_back();
        }
    } else {
        if (row.interval != end_interval())
            throw Error(Errc::invalid_topology,
                        "trace intervals must be contiguous: expected " +
                            std::to_string(end_interval()) + ", got " +
                            std::to_string(row.interval));
        if (row.values.size() != index_.size())
            throw Error(Errc::missing_value,
                        "interval " + std::to_string(row.interval) + " carries " +
                            std::to_string(row.values.size()) + " metrics, expected " +
                            std::to_string(index_.size()));
    }
    for (const auto& [key, value] : row.values) {
        auto it = index_.find(key);
        if (it == index_.end())
            throw Error(Errc::missing_value,
                        "metric " + key.label() + " absent from the first interval");
        columns_[it->second].push_back(value);
    }
    ++length_;
}

bool TraceLog::has(const MetricKey& key) const { return index_.count(key) != 0; }

std::size_t TraceLog::column(const MetricKey& key) const {
    auto it = index_.find(key);
    if (it == index_.end())
        throw Error(Errc::missing_value, "metric " + key.label() + " not in trace");
    return it->second;
}

std::span<const double> TraceLog::series(const MetricKey& key) const {
    const auto& col = columns_[column(key)];
    return {col.data(), col.size()};
}

std::span<const double> TraceLog::series_until(const MetricKey& key, long end_exclusive) const {
    auto full = series(key);
    if (end_exclusive <= first_) return full.subspan(0, 0);
    std::size_t n = static_cast<std::size_t>(end_exclusive - first_);
    return full.subspan(0, std::min(n, full.size()));
}

double TraceLog::at(const MetricKey& key, long interval) const {
    if (interval < first_ || interval >= end_interval())
        throw Error(Errc::insufficient_history,
                    "interval " + std::to_string(interval) + " outside trace [" +
                        std::to_string(first_) + ", " + std::to_string(end_interval()) + ")");
    return columns_[column(key)][static_cast<std::size_t>(interval - first_)];
}

std::vector<MetricKey> TraceLog::keys() const {
    std::vector<MetricKey> out;
    out.reserve(index_.size());
    for (const auto& [key, idx] : index_) out.push_back(key);
    return out;
}

}  // namespace qosm
