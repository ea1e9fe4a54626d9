#pragma once

#include "qosm/core/types.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace qosm {

enum class Algo { Armax, Ann, Rt };

const char* to_string(Algo a);
Algo algo_from_string(const std::string& s);

struct ArmaxConfig {
    double ridge = 1e-8;
    double improve_tol = 1e-4;  // relative held-out improvement to keep climbing
    int max_q = 8;
};

struct AnnConfig {
    double eta_plus = 1.2;
    double eta_minus = 0.5;
    double step_min = 1e-6;
    double step_max = 50.0;
    double step_init = 0.1;
    int epoch_cap = 500;
    int plateau_patience = 50;  // epochs without a new best training error
    double improve_tol = 1e-4;
    int max_hidden = 8;
    double init_range = 0.5;    // weights start uniform in [-range, range]
};

struct RtConfig {
    int min_leaf = 2;
};

/// One candidate learner of the bucket. ANN and RT run at a fixed q of 1;
/// ARMAX leaves fixed_q empty and hill-climbs it at training time.
struct LearnerConfig {
    Algo algo = Algo::Armax;
    std::optional<int> fixed_q;
    std::uint64_t seed = 1;
    ArmaxConfig armax;
    AnnConfig ann;
    RtConfig rt;

    std::string name() const { return to_string(algo); }
    bool needs_qos_lags() const { return algo == Algo::Armax; }

    static LearnerConfig make(Algo a, std::uint64_t seed = 1);
};

}  // namespace qosm
