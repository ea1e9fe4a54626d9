#pragma once

#include <span>

namespace qosm {

/// One SMAPE-style term: |pred - actual| / (pred + actual). Percentage
/// errors stored in local patterns and Eq.7/Eq.8 accounting all use this
/// form so local and global errors stay commensurate. Terms whose
/// denominator is not positive degrade to the maximum error of 1.
double ape_term(double predicted, double actual);

struct SmapeResult {
    double percent = 0.0;
    int terms_used = 0;
    int terms_skipped = 0;  // non-positive denominators
};

/// 100/n * sum of the per-term ratios; terms with a non-positive
/// denominator are skipped and n reduced. Throws on length mismatch or
/// when every term is skipped.
SmapeResult smape_detail(std::span<const double> predicted, std::span<const double> actual);
double smape(std::span<const double> predicted, std::span<const double> actual);

}  // namespace qosm
