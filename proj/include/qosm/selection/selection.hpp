#pragma once

#include "qosm/core/trace.hpp"
#include "qosm/partition/spaces.hpp"
#include "qosm/relevance/relevance.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace qosm {

/// A redundancy-aware selection instance over prefiltered candidates:
/// qos_relevance[i] = U(x_i, qos) (all above the zero threshold),
/// pair_redundancy[i][j] = U(x_i, x_j) for i != j.
struct MrmrProblem {
    std::vector<double> qos_relevance;
    std::vector<std::vector<double>> pair_redundancy;

    std::size_t size() const { return qos_relevance.size(); }
};

/// Phi = sum of relevance over the subset divided by (1 + sum of pairwise
/// redundancy over unordered distinct pairs).
double mrmr_phi(const std::vector<int>& subset, const MrmrProblem& problem);

/// Incremental random search: seeded hill climber over add/remove/swap
/// mutations, accepting only strict Phi improvements, starting from the
/// single best-relevance candidate. Stops after `budget` consecutive
/// proposals without improvement. Returns sorted candidate indices.
std::vector<int> mrmr_search(const MrmrProblem& problem, int budget, std::uint64_t seed);

struct SelectionConfig {
    RelevanceConfig relevance;
    int budget = 200;          // stagnant proposals before the search stops
    std::uint64_t seed = 1;
};

struct SelectionResult {
    std::vector<PrimitiveId> direct_selected;    // sorted
    std::vector<PrimitiveId> indirect_selected;  // sorted
    std::map<PrimitiveId, double> scores;        // U(x, qos) for every candidate

    /// Column entries of the selected primitives matrix: the sorted union.
    std::vector<PrimitiveId> columns() const;
};

/// Maximal relevance: every candidate whose U with the QoS history exceeds
/// the zero threshold.
std::vector<PrimitiveId> select_direct(const std::vector<PrimitiveId>& space,
                                       std::span<const double> qos_history,
                                       const TraceLog& trace, long end_exclusive,
                                       const SelectionConfig& cfg,
                                       std::map<PrimitiveId, double>* scores = nullptr);

/// Maximal relevance, minimal redundancy: prefilters by the zero threshold,
/// then approximately maximizes Phi by incremental random search.
std::vector<PrimitiveId> select_indirect(const std::vector<PrimitiveId>& space,
                                         std::span<const double> qos_history,
                                         const TraceLog& trace, long end_exclusive,
                                         const SelectionConfig& cfg,
                                         std::map<PrimitiveId, double>* scores = nullptr);

/// Algorithm: fresh per-interval selection, mR over the direct sub-space and
/// mRMR over the indirect sub-space; the matrix columns are their union.
SelectionResult hybrid_select(const PrimitiveSpaces& spaces,
                              std::span<const double> qos_history, const TraceLog& trace,
                              long end_exclusive, const SelectionConfig& cfg);

}  // namespace qosm
