#pragma once

#include "qosm/learners/config.hpp"
#include "qosm/learners/dataset.hpp"

#include <span>
#include <vector>

namespace qosm {

/// Linear time-series model over lagged primitives and lagged QoS values.
struct ArmaxModel {
    std::vector<SchemaEntry> schema;
    std::vector<double> coefficients;  // schema-aligned
    double intercept = 0.0;
    int q = 1;
};

/// Batch least-squares fit at a fixed lag depth; falls back to a ridge
/// solve on rank deficiency and never fails.
ArmaxModel fit_armax_at(const TrainingSet& data, int q, const ArmaxConfig& cfg);

/// Hill-climbs q starting at 1: refits at each depth, evaluates on the
/// chronological last 30% of rows, and keeps climbing while the held-out
/// error improves by more than the tolerance. Stops climbing once the
/// parameter vector would not be narrower than the training rows.
int hill_climb_armax_q(const LaggedSeriesTable& data, const ArmaxConfig& cfg);

/// Climb q, then fit on every provided row at the chosen depth.
ArmaxModel fit_armax(const LaggedSeriesTable& data, const ArmaxConfig& cfg);

double predict(const ArmaxModel& m, std::span<const double> input);

}  // namespace qosm
