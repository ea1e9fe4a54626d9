#pragma once

#include "qosm/core/types.hpp"

#include <span>
#include <vector>

namespace qosm {

/// Equal-width binning of a real series. A constant series collapses to one
/// effective bin.
struct DiscretizedSeries {
    std::vector<int> symbols;
    int bin_count = 1;
    std::vector<double> bin_edges;  // bin_count + 1 ascending boundaries
};

/// Bins over [min, max] with upper-inclusive boundaries: bin k covers
/// (edges[k], edges[k+1]], bin 0 additionally includes the minimum.
DiscretizedSeries discretize(std::span<const double> series, int bins);

/// U(X,Y) = 2 I(X;Y) / (H(X) + H(Y)), in [0, 1]. Entropies and mutual
/// information use base-2 logarithms over empirical joint frequencies.
/// Two constant series have zero entropy sum; U is 0 by convention.
double symmetric_uncertainty(const DiscretizedSeries& x, const DiscretizedSeries& y);

/// Discretizes both series with `bins` and evaluates U.
double symmetric_uncertainty(std::span<const double> x, std::span<const double> y,
                             int bins);

/// Configuration shared by the relevance-driven selection layers.
struct RelevanceConfig {
    int bins = 10;
    double epsilon = 1e-9;  // zero threshold on U
};

}  // namespace qosm
