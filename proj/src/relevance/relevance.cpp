#include "qosm/relevance/relevance.hpp"

#include <algorithm>
#include <cmath>

namespace qosm {

DiscretizedSeries discretize(std::span<const double> series, int bins) {
    if (series.empty()) throw Error(Errc::empty_input, "cannot discretize an empty series");
    if (bins < 1) throw Error(Errc::bad_config, "bin count must be >= 1");

    auto [lo_it, hi_it] = std::minmax_element(series.begin(), series.end());
    double lo = *lo_it, hi = *hi_it;

    DiscretizedSeries out;
    if (!(hi > lo)) {
        out.bin_count = 1;
        out.bin_edges = {lo, hi};
        out.symbols.assign(series.size(), 0);
        return out;
    }

    out.bin_count = bins;
    out.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
    double width = (hi - lo) / bins;
    for (int k = 0; k <= bins; ++k) out.bin_edges[static_cast<std::size_t>(k)] = lo + k * width;
    out.bin_edges.back() = hi;

    out.symbols.reserve(series.size());
    for (double v : series) {
        // first internal edge >= v decides the bin (upper-inclusive bins)
        int sym = 0;
        while (sym < bins - 1 && v > out.bin_edges[static_cast<std::size_t>(sym) + 1]) ++sym;
        out.symbols.push_back(sym);
    }
    return out;
}

double symmetric_uncertainty(const DiscretizedSeries& x, const DiscretizedSeries& y) {
    if (x.symbols.size() != y.symbols.size())
        throw Error(Errc::length_mismatch, "series lengths differ");
    if (x.symbols.empty()) throw Error(Errc::empty_input, "empty series");

    const std::size_t n = x.symbols.size();
    const int nx = x.bin_count, ny = y.bin_count;
    // integer counts, divided once: a constant series gets probability
    // exactly 1 and entropy exactly 0
    std::vector<long> joint_n(static_cast<std::size_t>(nx) * ny, 0);
    std::vector<long> px_n(static_cast<std::size_t>(nx), 0);
    std::vector<long> py_n(static_cast<std::size_t>(ny), 0);
    for (std::size_t i = 0; i < n; ++i) {
        int a = x.symbols[i], b = y.symbols[i];
        ++joint_n[static_cast<std::size_t>(a) * ny + b];
        ++px_n[static_cast<std::size_t>(a)];
        ++py_n[static_cast<std::size_t>(b)];
    }
    auto prob = [n](long c) { return static_cast<double>(c) / static_cast<double>(n); };
    std::vector<double> joint(joint_n.size()), px(px_n.size()), py(py_n.size());
    for (std::size_t i = 0; i < joint_n.size(); ++i) joint[i] = prob(joint_n[i]);
    for (std::size_t i = 0; i < px_n.size(); ++i) px[i] = prob(px_n[i]);
    for (std::size_t i = 0; i < py_n.size(); ++i) py[i] = prob(py_n[i]);

    auto entropy = [](const std::vector<double>& p) {
        std::vector<double> terms;
        terms.reserve(p.size());
        for (double v : p)
            if (v > 0.0) terms.push_back(-v * std::log2(v));
        std::sort(terms.begin(), terms.end());
        double h = 0.0;
        for (double t : terms) h += t;
        return h;
    };
    double hx = entropy(px), hy = entropy(py);
    if (hx + hy <= 0.0) return 0.0;  // both series constant

    // summing the terms in sorted order makes U(x,y) == U(y,x) bit-exact
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(nx) * ny);
    for (int a = 0; a < nx; ++a) {
        if (px[static_cast<std::size_t>(a)] <= 0.0) continue;
        for (int b = 0; b < ny; ++b) {
            double j = joint[static_cast<std::size_t>(a) * ny + b];
            if (j > 0.0)
                terms.push_back(j * std::log2(j / (px[static_cast<std::size_t>(a)] *
                                                   py[static_cast<std::size_t>(b)])));
        }
    }
    std::sort(terms.begin(), terms.end());
    double mi = 0.0;
    for (double t : terms) mi += t;
    double u = 2.0 * mi / (hx + hy);
    return std::clamp(u, 0.0, 1.0);
}

double symmetric_uncertainty(std::span<const double> x, std::span<const double> y,
                             int bins) {
    if (x.size() != y.size())
        throw Error(Errc::length_mismatch, "series lengths differ");
    return symmetric_uncertainty(discretize(x, bins), discretize(y, bins));
}

}  // namespace qosm
