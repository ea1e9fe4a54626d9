#include "qosm/core/topology.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qosm {

std::string Topology::pm_path(int pm) { return "pm" + std::to_string(pm); }

std::string Topology::vm_path(int pm, int vm) {
    return pm_path(pm) + "/vm" + std::to_string(vm);
}

std::string Topology::svc_path(int pm, int vm, int svc) {
    return vm_path(pm, vm) + "/svc" + std::to_string(svc);
}

std::optional<Placement> Topology::find(const ServiceInstanceId& id) const {
    for (int p = 0; p < static_cast<int>(pms.size()); ++p)
        for (int v = 0; v < static_cast<int>(pms[p].vms.size()); ++v)
            for (int s = 0; s < static_cast<int>(pms[p].vms[v].services.size()); ++s)
                if (pms[p].vms[v].services[s].id == id) return Placement{p, v, s};
    return std::nullopt;
}

const ServiceNode& Topology::service_at(const Placement& p) const {
    return pms.at(p.pm).vms.at(p.vm).services.at(p.svc);
}

std::string Topology::service_path(const ServiceInstanceId& id) const {
    auto p = find(id);
    if (!p) throw Error(Errc::unknown_entity, "unknown service-instance " + id.label());
    return svc_path(p->pm, p->vm, p->svc);
}

std::vector<ServiceInstanceId> Topology::all_services() const {
    std::vector<ServiceInstanceId> out;
    for (const auto& pm : pms)
        for (const auto& vm : pm.vms)
            for (const auto& svc : vm.services) out.push_back(svc.id);
    return out;
}

std::vector<ServiceInstanceId> Topology::dependencies_of(const ServiceInstanceId& id) const {
    std::vector<ServiceInstanceId> out;
    for (const auto& e : dependencies)
        if (e.from == id) out.push_back(e.to);
    return out;
}

const Topology& validate_topology(const Topology& t) {
    std::set<ServiceInstanceId> seen;
    for (const auto& pm : t.pms) {
        for (const auto& vm : pm.vms) {
            std::set<std::string> vm_prims;
            for (const auto& d : vm.primitives) {
                if (d.kind != PrimitiveKind::HardwareControl)
                    throw Error(Errc::invalid_topology,
                                "VM primitive '" + d.name + "' must be a hardware control");
                if (!vm_prims.insert(d.name).second)
                    throw Error(Errc::duplicate_primitive,
                                "duplicate primitive '" + d.name + "' on a VM");
            }
            for (const auto& svc : vm.services) {
                if (svc.id.service < 0 || svc.id.replica < 0)
                    throw Error(Errc::invalid_topology,
                                "negative service-instance index " + svc.id.label());
                if (!seen.insert(svc.id).second)
                    throw Error(Errc::duplicate_placement,
                                "service-instance " + svc.id.label() +
                                    " is placed on more than one VM");
                std::set<std::string> svc_prims;
                for (const auto& d : svc.primitives) {
                    if (d.kind == PrimitiveKind::HardwareControl)
                        throw Error(Errc::invalid_topology,
                                    "service primitive '" + d.name +
                                        "' cannot be a hardware control");
                    if (!svc_prims.insert(d.name).second)
                        throw Error(Errc::duplicate_primitive,
                                    "duplicate primitive '" + d.name + "' on " +
                                        svc.id.label());
                }
            }
        }
    }
    for (const auto& e : t.dependencies) {
        if (e.from == e.to)
            throw Error(Errc::invalid_topology,
                        "self dependency on " + e.from.label());
        if (!seen.count(e.from))
            throw Error(Errc::dangling_dependency,
                        "dependency from undeclared service " + e.from.label());
        if (!seen.count(e.to))
            throw Error(Errc::dangling_dependency,
                        "dependency to undeclared service " + e.to.label());
    }
    return t;
}

namespace {

using nlohmann::json;

json decl_to_json(const PrimitiveDecl& d) {
    return json{{"name", d.name}, {"kind", to_string(d.kind)}};
}

PrimitiveDecl decl_from_json(const json& j) {
    return PrimitiveDecl{j.at("name").get<std::string>(),
                         primitive_kind_from_string(j.at("kind").get<std::string>())};
}

}  // namespace

std::string serialize_topology(const Topology& t) {
    json root;
    root["physical_machines"] = json::array();
    for (const auto& pm : t.pms) {
        json jpm;
        jpm["vms"] = json::array();
        for (const auto& vm : pm.vms) {
            json jvm;
            jvm["primitives"] = json::array();
            for (const auto& d : vm.primitives) jvm["primitives"].push_back(decl_to_json(d));
            jvm["services"] = json::array();
            for (const auto& svc : vm.services) {
                json jsvc;
                jsvc["service"] = svc.id.service;
                jsvc["replica"] = svc.id.replica;
                jsvc["primitives"] = json::array();
                for (const auto& d : svc.primitives)
                    jsvc["primitives"].push_back(decl_to_json(d));
                jvm["services"].push_back(std::move(jsvc));
            }
            jpm["vms"].push_back(std::move(jvm));
        }
        root["physical_machines"].push_back(std::move(jpm));
    }
    root["dependencies"] = json::array();
    for (const auto& e : t.dependencies)
        root["dependencies"].push_back(json{{"from", {e.from.service, e.from.replica}},
                                            {"to", {e.to.service, e.to.replica}}});
    return root.dump(2) + "\n";
}

Topology parse_topology(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(Errc::bad_config, std::string("topology parse: ") + e.what());
    }
    try {
        Topology t;
        for (const auto& jpm : root.at("physical_machines")) {
            PmNode pm;
            for (const auto& jvm : jpm.at("vms")) {
                VmNode vm;
                if (jvm.contains("primitives"))
                    for (const auto& jd : jvm.at("primitives"))
                        vm.primitives.push_back(decl_from_json(jd));
                if (jvm.contains("services")) {
                    for (const auto& jsvc : jvm.at("services")) {
                        ServiceNode svc;
                        svc.id.service = jsvc.at("service").get<int>();
                        svc.id.replica = jsvc.at("replica").get<int>();
                        if (jsvc.contains("primitives"))
                            for (const auto& jd : jsvc.at("primitives"))
                                svc.primitives.push_back(decl_from_json(jd));
                        vm.services.push_back(std::move(svc));
                    }
                }
                pm.vms.push_back(std::move(vm));
            }
            t.pms.push_back(std::move(pm));
        }
        if (root.contains("dependencies")) {
            for (const auto& je : root.at("dependencies")) {
                DependencyEdge e;
                e.from = {je.at("from").at(0).get<int>(), je.at("from").at(1).get<int>()};
                e.to = {je.at("to").at(0).get<int>(), je.at("to").at(1).get<int>()};
                t.dependencies.push_back(e);
            }
        }
        return t;
    } catch (const json::exception& e) {
        throw Error(Errc::bad_config, std::string("topology schema: ") + e.what());
    }
}

Topology load_topology_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open topology file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_topology(ss.str());
}

void save_topology_file(const Topology& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::io_error, "cannot write topology file: " + path);
    out << serialize_topology(t);
}

}  // namespace qosm
