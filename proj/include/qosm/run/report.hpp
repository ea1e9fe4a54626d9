#pragma once

#include <string>
#include <vector>

namespace qosm {

struct VectorRecord {
    std::string algo;
    double e_local = 0.0;
    double e_global = 0.0;
    double e = 0.0;
};

struct IntervalRecord {
    long interval = 0;
    bool predicted = false;  // false during warm start
    std::vector<std::string> selected;
    std::string chosen;
    double prediction = 0.0;
    double actual = 0.0;
    double err_term = 0.0;       // |pred - actual| / (pred + actual)
    double alpha = 0.0;
    double beta = 0.0;
    double running_smape = 0.0;  // over all predictions so far
    std::vector<VectorRecord> vectors;
};

struct RunSummary {
    double smape_percent = 0.0;
    int eval_window = 0;     // requested window
    int terms_used = 0;
    int terms_skipped = 0;
    double mean_inputs = 0.0;
    long intervals = 0;
    long predicted = 0;
    std::string service;
    std::string qos;
    std::string selection;
    std::string learners;
    std::uint64_t seed = 0;
};

/// Per-interval records plus a summary recomputable from them. Wall-clock
/// timing stays out of the serialized form so identical runs produce
/// byte-identical report files.
struct RunReport {
    std::vector<IntervalRecord> records;
    RunSummary summary;
    double wall_ms_per_interval = 0.0;  // in-memory only
};

/// Recomputes the summary accuracy fields from the records.
RunSummary summarize(const std::vector<IntervalRecord>& records, int eval_window);

void write_report_jsonl(const RunReport& report, const std::string& path);
RunReport read_report_jsonl(const std::string& path);

}  // namespace qosm
