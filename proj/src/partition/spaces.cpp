#include "qosm/partition/spaces.hpp"

#include <algorithm>
#include <set>

namespace qosm {

namespace {

void add_service_prims(const Topology& t, const Placement& p, std::set<PrimitiveId>& out) {
    const ServiceNode& svc = t.service_at(p);
    std::string path = Topology::svc_path(p.pm, p.vm, p.svc);
    for (const auto& d : svc.primitives) out.insert({path, d.name, d.kind});
}

void add_vm_prims(const Topology& t, int pm, int vm, std::set<PrimitiveId>& out) {
    std::string path = Topology::vm_path(pm, vm);
    for (const auto& d : t.pms[pm].vms[vm].primitives) out.insert({path, d.name, d.kind});
}

Placement locate(const Topology& t, const ServiceInstanceId& s) {
    auto p = t.find(s);
    if (!p) throw Error(Errc::unknown_entity, "unknown service-instance " + s.label());
    return *p;
}

std::set<PrimitiveId> direct_set(const Topology& t, const ServiceInstanceId& s,
                                 const Placement& here) {
    std::set<PrimitiveId> direct;
    add_service_prims(t, here, direct);       // condition 1
    add_vm_prims(t, here.pm, here.vm, direct);  // condition 2
    for (const auto& dep : t.dependencies_of(s)) {
        Placement there = locate(t, dep);
        add_service_prims(t, there, direct);        // condition 3
        add_vm_prims(t, there.pm, there.vm, direct);  // condition 4
    }
    return direct;
}

std::set<PrimitiveId> indirect_set(const Topology& t, const Placement& here,
                                   const std::set<PrimitiveId>& direct) {
    std::set<PrimitiveId> indirect;
    const VmNode& vm = t.pms[here.pm].vms[here.vm];
    for (int s = 0; s < static_cast<int>(vm.services.size()); ++s) {  // condition 5
        if (s == here.svc) continue;
        add_service_prims(t, Placement{here.pm, here.vm, s}, indirect);
    }
    const PmNode& pm = t.pms[here.pm];
    for (int v = 0; v < static_cast<int>(pm.vms.size()); ++v) {  // condition 6
        if (v == here.vm) continue;
        add_vm_prims(t, here.pm, v, indirect);
    }
    // Rule 2 wins overlaps (a dependency co-located on the same VM or a
    // dependency's VM co-hosted on the same PM).
    for (const auto& p : direct) indirect.erase(p);
    return indirect;
}

}  // namespace

std::vector<PrimitiveId> PrimitiveSpaces::all() const {
    std::vector<PrimitiveId> out;
    out.reserve(direct.size() + indirect.size());
    std::merge(direct.begin(), direct.end(), indirect.begin(), indirect.end(),
               std::back_inserter(out));
    return out;
}

std::vector<PrimitiveId> possible_relevant_space(const Topology& t,
                                                 const ServiceInstanceId& s) {
    PrimitiveSpaces spaces = partition(t, s);
    return spaces.all();
}

PrimitiveSpaces partition(const Topology& t, const ServiceInstanceId& s) {
    Placement here = locate(t, s);
    std::set<PrimitiveId> direct = direct_set(t, s, here);
    std::set<PrimitiveId> indirect = indirect_set(t, here, direct);
    PrimitiveSpaces spaces;
    spaces.subject = s;
    spaces.direct.assign(direct.begin(), direct.end());
    spaces.indirect.assign(indirect.begin(), indirect.end());
    return spaces;
}

PrimitiveSpaces repartition_on_change(const PrimitiveSpaces& old, const Topology& t) {
    return partition(t, old.subject);
}

}  // namespace qosm
