#pragma once

#include "qosm/core/topology.hpp"
#include "qosm/core/types.hpp"

#include <vector>

namespace qosm {

/// The possible-relevant-primitives space of one service-instance, split
/// into the direct sub-space (own and dependency primitives) and the
/// indirect sub-space (co-located / co-hosted interference sources).
/// The two sets are disjoint; overlaps resolve in favor of direct.
struct PrimitiveSpaces {
    ServiceInstanceId subject;
    std::vector<PrimitiveId> direct;    // sorted
    std::vector<PrimitiveId> indirect;  // sorted

    bool operator==(const PrimitiveSpaces&) const = default;

    std::vector<PrimitiveId> all() const;
};

/// Every primitive eligible as a model input for `s`:
///   1) own software/environmental primitives,
///   2) hardware primitives of the hosting VM,
///   3) software/environmental primitives of direct dependencies,
///   4) hardware primitives of the dependencies' VMs,
///   5) software/environmental primitives of services co-located on the VM,
///   6) hardware primitives of VMs co-hosted on the PM.
std::vector<PrimitiveId> possible_relevant_space(const Topology& t,
                                                 const ServiceInstanceId& s);

/// Splits the space: direct = conditions 1-4, indirect = conditions 5-6.
PrimitiveSpaces partition(const Topology& t, const ServiceInstanceId& s);

/// Recompute-from-scratch on topology change; the old spaces only name the
/// subject.
PrimitiveSpaces repartition_on_change(const PrimitiveSpaces& old, const Topology& t);

}  // namespace qosm
