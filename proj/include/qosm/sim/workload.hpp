#pragma once

#include <cstdint>
#include <vector>

namespace qosm {

/// Seasonal wave with optional noise and occasional multiplicative bursts;
/// a compressed stand-in for a real diurnal request trend.
struct SeasonalParams {
    double base = 70.0;
    double amplitude = 45.0;
    int period = 40;        // intervals per cycle
    double noise = 0.0;     // gaussian sigma added per interval
    double burst_prob = 0.0;
    double burst_gain = 0.0;  // burst multiplies by 1 + gain * U(0,1)
};

struct WorkloadPhase {
    int intervals = 0;
    bool constant = true;
    double level = 100.0;       // constant phase
    SeasonalParams seasonal;    // seasonal phase
};

struct WorkloadProfile {
    std::vector<WorkloadPhase> phases;
    std::uint64_t seed = 1;
};

/// Evaluates the profile for `intervals` steps. Phase boundaries are honored
/// exactly; if the phases run short the final phase keeps generating.
/// Values are clamped at zero.
std::vector<double> generate_workload(const WorkloadProfile& profile, int intervals);

/// 150 static intervals followed by 350 fluctuating ones.
WorkloadProfile default_workload_profile(std::uint64_t seed);

}  // namespace qosm
