#pragma once

#include "qosm/core/types.hpp"

#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace qosm {

/// Addresses one traced metric: a primitive (owner entity + name) or a QoS
/// attribute (service path + attribute name).
struct MetricKey {
    std::string entity;
    std::string metric;

    auto operator<=>(const MetricKey&) const = default;

    std::string label() const { return entity + ":" + metric; }
};

inline MetricKey metric_of(const PrimitiveId& p) { return {p.owner, p.name}; }

/// Per-interval mean values of every traced metric. `values` must carry
/// exactly the same key set at every interval of a trace sequence.
struct IntervalTrace {
    long interval = 0;
    std::map<MetricKey, double> values;
};

/// Column-oriented store of a contiguous interval sequence. Rows are appended
/// through IntervalTrace records; consumers read whole per-metric series.
class TraceLog {
public:
    /// Appends the next interval. The first append fixes the key schema and
    /// the starting index; later appends must be contiguous and complete.
    void append(const IntervalTrace& row);

    long first_interval() const { return first_; }
    /// One past the last stored interval; 0 length means empty.
    long end_interval() const { return first_ + static_cast<long>(length_); }
    std::size_t length() const { return length_; }

    bool has(const MetricKey& key) const;
    /// Full stored series for `key`, index 0 = first_interval().
    std::span<const double> series(const MetricKey& key) const;
    /// Series truncated to intervals [first, end_exclusive).
    std::span<const double> series_until(const MetricKey& key, long end_exclusive) const;
    double at(const MetricKey& key, long interval) const;

    std::vector<MetricKey> keys() const;

private:
    std::size_t column(const MetricKey& key) const;

    long first_ = 0;
    std::size_t length_ = 0;
    std::map<MetricKey, std::size_t> index_;
    std::vector<std::vector<double>> columns_;
};

}  // namespace qosm
