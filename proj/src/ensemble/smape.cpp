#include "qosm/ensemble/smape.hpp"

#include "qosm/core/types.hpp"

#include <cmath>

namespace qosm {

double ape_term(double predicted, double actual) {
    double denom = predicted + actual;
    if (!(denom > 0.0)) return 1.0;
    return std::fabs(predicted - actual) / denom;
}

SmapeResult smape_detail(std::span<const double> predicted,
                         std::span<const double> actual) {
    if (predicted.size() != actual.size())
        throw Error(Errc::length_mismatch, "smape series lengths differ");
    if (predicted.empty()) throw Error(Errc::empty_input, "smape over empty series");
    SmapeResult r;
    double sum = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        double denom = predicted[i] + actual[i];
        if (!(denom > 0.0)) {
            ++r.terms_skipped;
            continue;
        }
        sum += std::fabs(predicted[i] - actual[i]) / denom;
        ++r.terms_used;
    }
    if (r.terms_used == 0)
        throw Error(Errc::empty_input, "every smape term had a non-positive denominator");
    r.percent = 100.0 * sum / static_cast<double>(r.terms_used);
    return r;
}

double smape(std::span<const double> predicted, std::span<const double> actual) {
    return smape_detail(predicted, actual).percent;
}

}  // namespace qosm
