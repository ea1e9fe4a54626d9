#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qosm/selection/selection.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace qosm;

namespace {

PrimitiveId prim(const std::string& owner, const std::string& name,
                 PrimitiveKind kind = PrimitiveKind::SoftwareControl) {
    return {owner, name, kind};
}

/// Trace with one service entity carrying the named metric series.
TraceLog trace_of(const std::map<std::string, std::vector<double>>& columns) {
    TraceLog log;
    std::size_t n = columns.begin()->second.size();
    for (std::size_t t = 0; t < n; ++t) {
        IntervalTrace row;
        row.interval = static_cast<long>(t);
        for (const auto& [name, series] : columns)
            row.values[{"pm0/vm0/svc0", name}] = series[t];
        log.append(row);
    }
    return log;
}

/// Exhaustive Phi optimum over all subsets (oracle for the random search).
double phi_optimum(const MrmrProblem& problem) {
    int n = static_cast<int>(problem.size());
    double best = 0.0;
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> subset;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) subset.push_back(i);
        best = std::max(best, mrmr_phi(subset, problem));
    }
    return best;
}

MrmrProblem random_problem(std::mt19937_64& rng, int max_candidates = 10) {
    MrmrProblem p;
    int n = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_candidates - 1));
    auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    p.qos_relevance.resize(static_cast<std::size_t>(n));
    for (auto& v : p.qos_relevance) v = 0.05 + 0.95 * uniform();
    p.pair_redundancy.assign(static_cast<std::size_t>(n),
                             std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double u = uniform();
            p.pair_redundancy[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = u;
            p.pair_redundancy[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = u;
        }
    return p;
}

}  // namespace

TEST_CASE("phi is relevance over one plus pairwise redundancy") {
    MrmrProblem p;
    p.qos_relevance = {0.5, 0.5};
    p.pair_redundancy = {{0.0, 1.0}, {1.0, 0.0}};
    CHECK(mrmr_phi({0}, p) == doctest::Approx(0.5));
    CHECK(mrmr_phi({0, 1}, p) == doctest::Approx(0.5));  // (0.5+0.5)/(1+1)
    CHECK(mrmr_phi({}, p) == doctest::Approx(0.0));
}

TEST_CASE("an exact duplicate is never added alongside the original") {
    MrmrProblem p;
    p.qos_relevance = {0.5, 0.5};
    p.pair_redundancy = {{0.0, 1.0}, {1.0, 0.0}};
    auto chosen = mrmr_search(p, 200, 42);
    CHECK(chosen.size() == 1);  // the tie keeps the incumbent single
}

TEST_CASE("search never selects from an empty candidate set") {
    MrmrProblem p;
    CHECK(mrmr_search(p, 200, 1).empty());
}

TEST_CASE("search matches exhaustive enumeration on small spaces") {
    std::mt19937_64 rng(5);
    int exact = 0;
    const int trials = 60;
    for (int trial = 0; trial < trials; ++trial) {
        MrmrProblem p = random_problem(rng);
        auto chosen = mrmr_search(p, 200, 1000 + static_cast<std::uint64_t>(trial));
        double phi = mrmr_phi(chosen, p);
        double best = phi_optimum(p);
        CHECK(phi >= 0.90 * best);
        if (std::fabs(phi - best) < 1e-12) ++exact;
    }
    CHECK(exact >= trials * 95 / 100);
}

TEST_CASE("adding a perfect copy of a selected candidate never grows the set") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        MrmrProblem p = random_problem(rng, 8);
        auto before = mrmr_search(p, 200, 77);
        REQUIRE(!before.empty());
        int dup_of = before[0];

        MrmrProblem extended = p;
        std::size_t n = p.size();
        extended.qos_relevance.push_back(p.qos_relevance[static_cast<std::size_t>(dup_of)]);
        for (std::size_t i = 0; i < n; ++i) {
            double u = p.pair_redundancy[static_cast<std::size_t>(dup_of)][i];
            extended.pair_redundancy[i].push_back(u);
        }
        std::vector<double> dup_row =
            p.pair_redundancy[static_cast<std::size_t>(dup_of)];
        dup_row.push_back(1.0);
        extended.pair_redundancy.push_back(dup_row);
        // identical copies are fully redundant with each other
        extended.pair_redundancy[static_cast<std::size_t>(dup_of)][n] = 1.0;
        extended.pair_redundancy[n][static_cast<std::size_t>(dup_of)] = 1.0;

        auto after = mrmr_search(extended, 200, 77);
        CHECK(after.size() <= before.size());
        CHECK(mrmr_phi(after, extended) >= mrmr_phi(before, p) - 1e-12);
    }
}

TEST_CASE("same seed reproduces the same search result") {
    std::mt19937_64 rng(13);
    MrmrProblem p = random_problem(rng);
    CHECK(mrmr_search(p, 200, 4242) == mrmr_search(p, 200, 4242));
    MrmrProblem p2 = p;
    CHECK(mrmr_search(p2, 200, 4242) == mrmr_search(p, 200, 4242));
}

TEST_CASE("select_direct keeps exactly the candidates above the zero threshold") {
    // qos copies cpu exactly; flat is constant (U = 0); noise is shuffled qos
    std::vector<double> qos{1, 5, 2, 8, 3, 9, 4, 7, 6, 2, 8, 1};
    std::vector<double> flat(qos.size(), 4.0);
    std::vector<double> noise{6, 2, 8, 1, 9, 3, 7, 4, 5, 8, 1, 2};
    TraceLog log = trace_of({{"cpu", qos}, {"flat", flat}, {"noise", noise}, {"qos", qos}});

    std::vector<PrimitiveId> space{prim("pm0/vm0/svc0", "cpu"),
                                   prim("pm0/vm0/svc0", "flat"),
                                   prim("pm0/vm0/svc0", "noise")};
    SelectionConfig cfg;
    std::map<PrimitiveId, double> scores;
    auto qos_hist = log.series(MetricKey{"pm0/vm0/svc0", "qos"});
    auto selected = select_direct(space, qos_hist, log, log.end_interval(), cfg, &scores);

    CHECK(std::count(selected.begin(), selected.end(), prim("pm0/vm0/svc0", "cpu")) == 1);
    CHECK(std::count(selected.begin(), selected.end(), prim("pm0/vm0/svc0", "flat")) == 0);
    CHECK(scores.at(prim("pm0/vm0/svc0", "cpu")) == doctest::Approx(1.0));
    CHECK(scores.at(prim("pm0/vm0/svc0", "flat")) == doctest::Approx(0.0));
    // independent recomputation of every score
    for (const auto& p : space) {
        double u = symmetric_uncertainty(log.series(metric_of(p)), qos_hist,
                                         cfg.relevance.bins);
        CHECK(scores.at(p) == doctest::Approx(u));
        bool in = std::count(selected.begin(), selected.end(), p) == 1;
        CHECK(in == (u > cfg.relevance.epsilon));
    }
    // the deterministic copy scores strictly highest
    for (const auto& p : space)
        if (!(p == prim("pm0/vm0/svc0", "cpu")))
            CHECK(scores.at(prim("pm0/vm0/svc0", "cpu")) > scores.at(p));
}

TEST_CASE("select_direct of all-constant candidates is empty") {
    std::vector<double> qos{1, 2, 3, 4, 5, 6};
    std::vector<double> c1(qos.size(), 2.0), c2(qos.size(), 7.0);
    TraceLog log = trace_of({{"a", c1}, {"b", c2}, {"qos", qos}});
    SelectionConfig cfg;
    auto selected = select_direct({prim("pm0/vm0/svc0", "a"), prim("pm0/vm0/svc0", "b")},
                                  log.series(MetricKey{"pm0/vm0/svc0", "qos"}), log,
                                  log.end_interval(), cfg);
    CHECK(selected.empty());
}

TEST_CASE("select_indirect over an empty space is empty") {
    std::vector<double> qos{1, 2, 3, 4};
    TraceLog log = trace_of({{"qos", qos}});
    SelectionConfig cfg;
    CHECK(select_indirect({}, log.series(MetricKey{"pm0/vm0/svc0", "qos"}), log,
                          log.end_interval(), cfg)
              .empty());
}

TEST_CASE("select_indirect drops duplicated series and below-threshold candidates") {
    std::mt19937_64 rng(21);
    std::vector<double> qos, a, flat;
    for (int t = 0; t < 40; ++t) {
        double v = std::sin(t * 0.7) * 10 + static_cast<double>(rng() % 5);
        qos.push_back(v);
        a.push_back(v + static_cast<double>(rng() % 3));
        flat.push_back(1.0);
    }
    TraceLog log = trace_of({{"a", a}, {"dup", a}, {"flat", flat}, {"qos", qos}});
    SelectionConfig cfg;
    std::map<PrimitiveId, double> scores;
    auto selected = select_indirect(
        {prim("pm0/vm0/svc0", "a"), prim("pm0/vm0/svc0", "dup"),
         prim("pm0/vm0/svc0", "flat")},
        log.series(MetricKey{"pm0/vm0/svc0", "qos"}), log, log.end_interval(), cfg,
        &scores);
    // exactly one of the two identical series; the constant never
    CHECK(selected.size() == 1);
    CHECK(scores.at(selected[0]) > cfg.relevance.epsilon);
}

TEST_CASE("hybrid selection unions disjoint sub-space selections") {
    std::mt19937_64 rng(31);
    std::vector<double> qos, d1, i1, i2;
    for (int t = 0; t < 60; ++t) {
        double v = std::sin(t * 0.5) * 5 + static_cast<double>(rng() % 4);
        qos.push_back(v + t * 0.1);
        d1.push_back(v);
        i1.push_back(v * 2 + static_cast<double>(rng() % 3));
        i2.push_back(static_cast<double>(rng() % 9));
    }
    TraceLog log = trace_of({{"d1", d1}, {"i1", i1}, {"i2", i2}, {"qos", qos}});

    PrimitiveSpaces spaces;
    spaces.subject = {1, 1};
    spaces.direct = {prim("pm0/vm0/svc0", "d1")};
    spaces.indirect = {prim("pm0/vm0/svc0", "i1"), prim("pm0/vm0/svc0", "i2")};

    SelectionConfig cfg;
    auto result = hybrid_select(spaces, log.series(MetricKey{"pm0/vm0/svc0", "qos"}), log,
                                log.end_interval(), cfg);
    for (const auto& p : result.direct_selected)
        CHECK(std::count(result.indirect_selected.begin(), result.indirect_selected.end(),
                         p) == 0);
    auto cols = result.columns();
    CHECK(cols.size() == result.direct_selected.size() + result.indirect_selected.size());
    for (const auto& p : cols) CHECK(result.scores.at(p) > cfg.relevance.epsilon);
}

TEST_CASE("hybrid selection with empty sub-selections yields zero columns") {
    std::vector<double> qos{3, 3, 3, 3};  // constant QoS: U = 0 with everything
    std::vector<double> a{1, 2, 3, 4};
    TraceLog log = trace_of({{"a", a}, {"qos", qos}});
    PrimitiveSpaces spaces;
    spaces.direct = {prim("pm0/vm0/svc0", "a")};
    SelectionConfig cfg;
    auto result = hybrid_select(spaces, log.series(MetricKey{"pm0/vm0/svc0", "qos"}), log,
                                log.end_interval(), cfg);
    CHECK(result.columns().empty());
}
