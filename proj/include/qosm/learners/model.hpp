#pragma once

#include "qosm/learners/ann.hpp"
#include "qosm/learners/armax.hpp"
#include "qosm/learners/config.hpp"
#include "qosm/learners/regression_tree.hpp"

#include <span>
#include <string>
#include <variant>

namespace qosm {

/// One learned QoS function, tagged by algorithm; immutable once built.
struct TrainedModel {
    Algo algo = Algo::Armax;
    std::variant<ArmaxModel, AnnModel, RtModel> impl;

    const std::vector<SchemaEntry>& schema() const;
    double predict(std::span<const double> input) const;
};

/// Trains on `data` per the learner's configuration. ARMAX expects
/// `data` to already carry its lag structure (see fit_bucket for the
/// q determination step).
TrainedModel fit_model(const TrainingSet& data, const LearnerConfig& cfg);

/// Versioned structured-text serialization; deserialized models predict
/// bit-for-bit identically.
std::string serialize_model(const TrainedModel& m);
TrainedModel parse_model(const std::string& text);

void save_model_file(const TrainedModel& m, const std::string& path);
TrainedModel load_model_file(const std::string& path);

/// Human-oriented one-screen description for the inspect command.
std::string describe_model(const TrainedModel& m);

}  // namespace qosm
