#include "qosm/selection/selection.hpp"

#include <algorithm>
#include <random>

namespace qosm {

namespace {

// stable modulo pick; bias is irrelevant at these ranges
std::size_t pick(std::mt19937_64& rng, std::size_t n) { return rng() % n; }

struct Candidate {
    PrimitiveId id;
    double score;
    DiscretizedSeries symbols;
};

std::vector<Candidate> score_candidates(const std::vector<PrimitiveId>& space,
                                        std::span<const double> qos_history,
                                        const TraceLog& trace, long end_exclusive,
                                        const SelectionConfig& cfg,
                                        std::map<PrimitiveId, double>* scores) {
    if (qos_history.size() < 2)
        throw Error(Errc::insufficient_samples, "selection needs >= 2 intervals of history");
    DiscretizedSeries qos = discretize(qos_history, cfg.relevance.bins);
    std::vector<Candidate> out;
    for (const auto& prim : space) {
        auto series = trace.series_until(metric_of(prim), end_exclusive);
        if (series.size() != qos_history.size())
            throw Error(Errc::length_mismatch,
                        "primitive " + prim.label() + " history length " +
                            std::to_string(series.size()) + " vs qos " +
                            std::to_string(qos_history.size()));
        Candidate c;
        c.id = prim;
        c.symbols = discretize(series, cfg.relevance.bins);
        c.score = symmetric_uncertainty(c.symbols, qos);
        if (scores) (*scores)[prim] = c.score;
        if (c.score > cfg.relevance.epsilon) out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

double mrmr_phi(const std::vector<int>& subset, const MrmrProblem& problem) {
    double relevance = 0.0;
    double redundancy = 0.0;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        relevance += problem.qos_relevance[static_cast<std::size_t>(subset[i])];
        for (std::size_t j = i + 1; j < subset.size(); ++j)
            redundancy += problem.pair_redundancy[static_cast<std::size_t>(subset[i])]
                                                 [static_cast<std::size_t>(subset[j])];
    }
    return relevance / (1.0 + redundancy);
}

namespace {

std::vector<int> climb(const MrmrProblem& problem, std::vector<int> current, int budget,
                       std::mt19937_64& rng) {
    const int n = static_cast<int>(problem.size());
    std::vector<char> member(static_cast<std::size_t>(n), 0);
    for (int i : current) member[static_cast<std::size_t>(i)] = 1;
    double current_phi = mrmr_phi(current, problem);

    int stagnant = 0;
    while (stagnant < budget) {
        std::vector<int> proposal = current;
        const std::size_t in = current.size();
        const std::size_t out = static_cast<std::size_t>(n) - in;

        // feasible mutation kinds: 0 add, 1 remove, 2 swap
        std::vector<int> kinds;
        if (out > 0) kinds.push_back(0);
        if (in > 0) kinds.push_back(1);
        if (in > 0 && out > 0) kinds.push_back(2);
        int kind = kinds[pick(rng, kinds.size())];

        auto nth_outside = [&](std::size_t k) {
            for (int i = 0; i < n; ++i)
                if (!member[static_cast<std::size_t>(i)] && k-- == 0) return i;
            return -1;
        };

        if (kind == 0) {
            proposal.push_back(nth_outside(pick(rng, out)));
        } else if (kind == 1) {
            proposal.erase(proposal.begin() + static_cast<long>(pick(rng, in)));
        } else {
            proposal[pick(rng, in)] = nth_outside(pick(rng, out));
        }
        std::sort(proposal.begin(), proposal.end());

        double phi = mrmr_phi(proposal, problem);
        if (phi > current_phi) {  // ties keep the incumbent
            std::fill(member.begin(), member.end(), 0);
            for (int i : proposal) member[static_cast<std::size_t>(i)] = 1;
            current = std::move(proposal);
            current_phi = phi;
            stagnant = 0;
        } else {
            ++stagnant;
        }
    }
    return current;
}

constexpr int kSearchRestarts = 8;

}  // namespace

std::vector<int> mrmr_search(const MrmrProblem& problem, int budget, std::uint64_t seed) {
    const int n = static_cast<int>(problem.size());
    if (n == 0) return {};

    int best_single = 0;
    for (int i = 1; i < n; ++i)
        if (problem.qos_relevance[static_cast<std::size_t>(i)] >
            problem.qos_relevance[static_cast<std::size_t>(best_single)])
            best_single = i;

    // the first climb starts from the single best-scoring candidate; the
    // remaining restarts climb from random singles to escape local optima
    std::mt19937_64 rng(seed);
    std::vector<int> best;
    double best_phi = -1.0;
    for (int restart = 0; restart < kSearchRestarts; ++restart) {
        int start = restart == 0 ? best_single
                                 : static_cast<int>(pick(rng, static_cast<std::size_t>(n)));
        std::vector<int> found = climb(problem, {start}, budget, rng);
        double phi = mrmr_phi(found, problem);
        if (phi > best_phi) {  // ties keep the earlier restart
            best_phi = phi;
            best = std::move(found);
        }
    }
    return best;
}

std::vector<PrimitiveId> SelectionResult::columns() const {
    std::vector<PrimitiveId> out;
    out.reserve(direct_selected.size() + indirect_selected.size());
    std::merge(direct_selected.begin(), direct_selected.end(), indirect_selected.begin(),
               indirect_selected.end(), std::back_inserter(out));
    return out;
}

std::vector<PrimitiveId> select_direct(const std::vector<PrimitiveId>& space,
                                       std::span<const double> qos_history,
                                       const TraceLog& trace, long end_exclusive,
                                       const SelectionConfig& cfg,
                                       std::map<PrimitiveId, double>* scores) {
    auto candidates = score_candidates(space, qos_history, trace, end_exclusive, cfg, scores);
    std::vector<PrimitiveId> out;
    out.reserve(candidates.size());
    for (const auto& c : candidates) out.push_back(c.id);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PrimitiveId> select_indirect(const std::vector<PrimitiveId>& space,
                                         std::span<const double> qos_history,
                                         const TraceLog& trace, long end_exclusive,
                                         const SelectionConfig& cfg,
                                         std::map<PrimitiveId, double>* scores) {
    auto candidates = score_candidates(space, qos_history, trace, end_exclusive, cfg, scores);
    if (candidates.empty()) return {};

    MrmrProblem problem;
    const std::size_t n = candidates.size();
    problem.qos_relevance.resize(n);
    problem.pair_redundancy.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        problem.qos_relevance[i] = candidates[i].score;
        for (std::size_t j = i + 1; j < n; ++j) {
            double u = symmetric_uncertainty(candidates[i].symbols, candidates[j].symbols);
            problem.pair_redundancy[i][j] = u;
            problem.pair_redundancy[j][i] = u;
        }
    }

    std::vector<int> chosen = mrmr_search(problem, cfg.budget, cfg.seed);
    std::vector<PrimitiveId> out;
    out.reserve(chosen.size());
    for (int i : chosen) out.push_back(candidates[static_cast<std::size_t>(i)].id);
    std::sort(out.begin(), out.end());
    return out;
}

SelectionResult hybrid_select(const PrimitiveSpaces& spaces,
                              std::span<const double> qos_history, const TraceLog& trace,
                              long end_exclusive, const SelectionConfig& cfg) {
    SelectionResult result;
    result.direct_selected = select_direct(spaces.direct, qos_history, trace, end_exclusive,
                                           cfg, &result.scores);
    result.indirect_selected = select_indirect(spaces.indirect, qos_history, trace,
                                               end_exclusive, cfg, &result.scores);
    return result;
}

}  // namespace qosm
