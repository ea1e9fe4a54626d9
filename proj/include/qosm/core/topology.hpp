#pragma once

#include "qosm/core/types.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qosm {

struct PrimitiveDecl {
    std::string name;
    PrimitiveKind kind = PrimitiveKind::SoftwareControl;

    auto operator<=>(const PrimitiveDecl&) const = default;
};

struct ServiceNode {
    ServiceInstanceId id;
    std::vector<PrimitiveDecl> primitives;  // software / environmental only

    auto operator<=>(const ServiceNode&) const = default;
};

struct VmNode {
    std::vector<PrimitiveDecl> primitives;  // hardware only
    std::vector<ServiceNode> services;

    auto operator<=>(const VmNode&) const = default;
};

struct PmNode {
    std::vector<VmNode> vms;

    auto operator<=>(const PmNode&) const = default;
};

/// Directed edge: `from` has a direct functional dependency on `to`.
struct DependencyEdge {
    ServiceInstanceId from;
    ServiceInstanceId to;

    auto operator<=>(const DependencyEdge&) const = default;
};

/// Placement of one service-instance inside the PM/VM tree.
struct Placement {
    int pm = 0;
    int vm = 0;
    int svc = 0;
};

/// PMs hold VMs, VMs hold service-instances. Entities are addressed by
/// positional paths: "pm<i>", "pm<i>/vm<j>", "pm<i>/vm<j>/svc<k>".
struct Topology {
    std::vector<PmNode> pms;
    std::vector<DependencyEdge> dependencies;

    bool operator==(const Topology&) const = default;

    static std::string pm_path(int pm);
    static std::string vm_path(int pm, int vm);
    static std::string svc_path(int pm, int vm, int svc);

    std::optional<Placement> find(const ServiceInstanceId& id) const;
    const ServiceNode& service_at(const Placement& p) const;
    std::string service_path(const ServiceInstanceId& id) const;

    /// All service-instances in placement order.
    std::vector<ServiceInstanceId> all_services() const;

    /// Direct dependencies of `id` (edge targets).
    std::vector<ServiceInstanceId> dependencies_of(const ServiceInstanceId& id) const;
};

/// Checks all structural invariants: unique placement, unique (owner, name)
/// primitives, kind/owner agreement, well-formed dependency edges.
/// Throws Error with a distinct code per violation class.
const Topology& validate_topology(const Topology& t);

Topology parse_topology(const std::string& text);
std::string serialize_topology(const Topology& t);

Topology load_topology_file(const std::string& path);
void save_topology_file(const Topology& t, const std::string& path);

}  // namespace qosm
