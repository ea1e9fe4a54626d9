#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qosm/partition/spaces.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace qosm;

namespace {

ServiceNode service(int i, int j) {
    return {{i, j},
            {{"thread", PrimitiveKind::SoftwareControl},
             {"workload", PrimitiveKind::Environmental}}};
}

VmNode vm_with(std::vector<ServiceNode> services) {
    VmNode vm;
    vm.primitives = {{"cpu", PrimitiveKind::HardwareControl},
                     {"memory", PrimitiveKind::HardwareControl}};
    vm.services = std::move(services);
    return vm;
}

/// One PM, three co-hosted VMs, 26 co-located services on the first.
Topology large_colocated_topology() {
    Topology t;
    PmNode pm;
    std::vector<ServiceNode> colocated;
    for (int i = 1; i <= 26; ++i) colocated.push_back(service(i, 1));
    pm.vms.push_back(vm_with(std::move(colocated)));
    pm.vms.push_back(vm_with({service(27, 1)}));
    pm.vms.push_back(vm_with({service(28, 1)}));
    t.pms.push_back(std::move(pm));
    return validate_topology(t);
}

Topology random_topology(std::mt19937_64& rng) {
    Topology t;
    int next = 1;
    int pms = 1 + static_cast<int>(rng() % 3);
    for (int p = 0; p < pms; ++p) {
        PmNode pm;
        int vms = 1 + static_cast<int>(rng() % 3);
        for (int v = 0; v < vms; ++v) {
            int services = 1 + static_cast<int>(rng() % 4);
            std::vector<ServiceNode> nodes;
            for (int s = 0; s < services; ++s) nodes.push_back(service(next++, 1));
            pm.vms.push_back(vm_with(std::move(nodes)));
        }
        t.pms.push_back(std::move(pm));
    }
    auto all = t.all_services();
    int edges = static_cast<int>(rng() % 4);
    for (int e = 0; e < edges; ++e) {
        auto a = all[rng() % all.size()];
        auto b = all[rng() % all.size()];
        if (a == b) continue;
        bool dup = false;
        for (const auto& existing : t.dependencies)
            if (existing.from == a && existing.to == b) dup = true;
        if (!dup) t.dependencies.push_back({a, b});
    }
    return validate_topology(t);
}

}  // namespace

TEST_CASE("26 co-located services on one of three VMs yield the 58-primitive space, 4 direct / 54 indirect") {
    Topology t = large_colocated_topology();
    ServiceInstanceId subject{1, 1};
    auto space = possible_relevant_space(t, subject);
    CHECK(space.size() == 58);
    auto spaces = partition(t, subject);
    CHECK(spaces.direct.size() == 4);
    CHECK(spaces.indirect.size() == 54);
}

TEST_CASE("isolated service owns only its own and its VM's primitives") {
    Topology t;
    PmNode pm;
    pm.vms.push_back(vm_with({service(1, 1)}));
    t.pms.push_back(pm);
    auto spaces = partition(t, {1, 1});
    CHECK(spaces.indirect.empty());
    CHECK(spaces.direct.size() == 4);  // thread, workload, cpu, memory
}

TEST_CASE("dependency on another PM contributes its primitives to the direct space") {
    Topology t;
    PmNode pm1, pm2;
    pm1.vms.push_back(vm_with({service(1, 1)}));
    pm2.vms.push_back(vm_with({service(2, 1)}));
    t.pms = {pm1, pm2};
    t.dependencies.push_back({{1, 1}, {2, 1}});
    auto spaces = partition(t, {1, 1});
    CHECK(spaces.direct.size() == 8);  // own 4 + dependency's SW/EP + its VM HW
    CHECK(spaces.indirect.empty());
    PrimitiveId dep_thread{"pm1/vm0/svc0", "thread", PrimitiveKind::SoftwareControl};
    CHECK(std::count(spaces.direct.begin(), spaces.direct.end(), dep_thread) == 1);
}

TEST_CASE("transitive dependencies stay out of the space") {
    Topology t;
    PmNode pm1, pm2, pm3;
    pm1.vms.push_back(vm_with({service(1, 1)}));
    pm2.vms.push_back(vm_with({service(2, 1)}));
    pm3.vms.push_back(vm_with({service(3, 1)}));
    t.pms = {pm1, pm2, pm3};
    t.dependencies.push_back({{1, 1}, {2, 1}});
    t.dependencies.push_back({{2, 1}, {3, 1}});
    auto space = possible_relevant_space(t, {1, 1});
    for (const auto& p : space) CHECK(p.owner.substr(0, 3) != "pm2");
}

TEST_CASE("no cross-PM primitives without a dependency edge") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Topology t = random_topology(rng);
        for (const auto& subject : t.all_services()) {
            auto place = *t.find(subject);
            std::set<std::string> allowed_pms{Topology::pm_path(place.pm)};
            for (const auto& dep : t.dependencies_of(subject)) {
                auto dp = *t.find(dep);
                allowed_pms.insert(Topology::pm_path(dp.pm));
            }
            for (const auto& prim : possible_relevant_space(t, subject)) {
                std::string pm = prim.owner.substr(0, prim.owner.find('/'));
                CHECK(allowed_pms.count(pm) == 1);
            }
        }
    }
}

TEST_CASE("direct and indirect partition the possible-relevant space") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        Topology t = random_topology(rng);
        for (const auto& subject : t.all_services()) {
            auto spaces = partition(t, subject);
            auto space = possible_relevant_space(t, subject);
            std::set<PrimitiveId> direct(spaces.direct.begin(), spaces.direct.end());
            std::set<PrimitiveId> indirect(spaces.indirect.begin(), spaces.indirect.end());
            for (const auto& p : direct) CHECK(indirect.count(p) == 0);
            std::set<PrimitiveId> unions = direct;
            unions.insert(indirect.begin(), indirect.end());
            CHECK(unions == std::set<PrimitiveId>(space.begin(), space.end()));
        }
    }
}

TEST_CASE("co-located dependency resolves into the direct space") {
    Topology t;
    PmNode pm;
    pm.vms.push_back(vm_with({service(1, 1), service(2, 1)}));
    t.pms.push_back(pm);
    t.dependencies.push_back({{1, 1}, {2, 1}});
    auto spaces = partition(t, {1, 1});
    PrimitiveId dep_workload{"pm0/vm0/svc1", "workload", PrimitiveKind::Environmental};
    CHECK(std::count(spaces.direct.begin(), spaces.direct.end(), dep_workload) == 1);
    CHECK(std::count(spaces.indirect.begin(), spaces.indirect.end(), dep_workload) == 0);
}

TEST_CASE("repartition recomputes from the new topology alone") {
    Topology before = large_colocated_topology();
    auto old_spaces = partition(before, {1, 1});

    SUBCASE("stopping a VM removes its hardware primitives from the indirect space") {
        Topology after = before;
        after.pms[0].vms.pop_back();  // vm2 stops
        auto spaces = repartition_on_change(old_spaces, after);
        CHECK(spaces == partition(after, {1, 1}));
        CHECK(spaces.indirect.size() == 52);
    }
    SUBCASE("stopped co-located services leave the indirect space") {
        Topology after = before;
        auto& services = after.pms[0].vms[0].services;
        services.erase(services.end() - 2, services.end());
        auto spaces = repartition_on_change(old_spaces, after);
        CHECK(spaces.indirect.size() == 54 - 4);  // two services, thread + workload each
    }
    SUBCASE("a freshly co-hosted VM joins the indirect space") {
        Topology after = before;
        after.pms[0].vms.push_back(vm_with({service(40, 1)}));
        auto spaces = repartition_on_change(old_spaces, after);
        CHECK(spaces.indirect.size() == 54 + 2);  // its cpu and memory join
    }
    SUBCASE("unchanged topology reproduces identical spaces") {
        auto spaces = repartition_on_change(old_spaces, before);
        CHECK(spaces == old_spaces);
    }
    SUBCASE("subject removed from the topology is an error") {
        Topology after = before;
        after.pms[0].vms[0].services.erase(after.pms[0].vms[0].services.begin());
        after.dependencies.clear();
        CHECK_THROWS_AS(repartition_on_change(old_spaces, after), Error);
    }
}

TEST_CASE("own QoS attributes never appear as primitives") {
    Topology t = large_colocated_topology();
    for (const auto& p : possible_relevant_space(t, {1, 1})) {
        CHECK(p.name != "response_time");
        CHECK(p.name != "throughput");
    }
}
