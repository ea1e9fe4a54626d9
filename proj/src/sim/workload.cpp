#include "qosm/sim/workload.hpp"

#include "qosm/core/types.hpp"
#include "qosm/sim/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qosm {

std::vector<double> generate_workload(const WorkloadProfile& profile, int intervals) {
    if (intervals <= 0) throw Error(Errc::bad_config, "workload needs intervals > 0");
    if (profile.phases.empty()) throw Error(Errc::bad_config, "workload profile has no phases");
    for (const auto& phase : profile.phases) {
        if (phase.intervals < 0) throw Error(Errc::bad_config, "negative phase span");
        if (phase.constant && phase.level < 0)
            throw Error(Errc::bad_config, "negative workload level");
    }

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(intervals));
    std::size_t phase_idx = 0;
    int into_phase = 0;
    for (int t = 0; t < intervals; ++t) {
        while (phase_idx + 1 < profile.phases.size() &&
               into_phase >= profile.phases[phase_idx].intervals) {
            ++phase_idx;
            into_phase = 0;
        }
        const WorkloadPhase& phase = profile.phases[phase_idx];
        double v;
        if (phase.constant) {
            v = phase.level;
        } else {
            const SeasonalParams& s = phase.seasonal;
            v = s.base + s.amplitude * std::sin(2.0 * std::numbers::pi *
                                                static_cast<double>(into_phase) /
                                                static_cast<double>(std::max(s.period, 1)));
            if (s.noise > 0.0)
                v += s.noise * gauss_hash(profile.seed, hash_label("wl-noise"),
                                          static_cast<std::uint64_t>(t));
            if (s.burst_prob > 0.0 &&
                unit_hash(profile.seed, hash_label("wl-burst"),
                          static_cast<std::uint64_t>(t)) < s.burst_prob)
                v *= 1.0 + s.burst_gain * unit_hash(profile.seed, hash_label("wl-burst-gain"),
                                                    static_cast<std::uint64_t>(t));
        }
        out.push_back(std::max(v, 0.0));
        ++into_phase;
    }
    return out;
}

WorkloadProfile default_workload_profile(std::uint64_t seed) {
    WorkloadProfile p;
    p.seed = seed;
    WorkloadPhase stable;
    stable.intervals = 150;
    stable.constant = true;
    stable.level = 60.0;
    WorkloadPhase fluctuating;
    fluctuating.intervals = 350;
    fluctuating.constant = false;
    fluctuating.seasonal = SeasonalParams{70.0, 45.0, 40, 3.0, 0.06, 1.0};
    p.phases = {stable, fluctuating};
    return p;
}

}  // namespace qosm
