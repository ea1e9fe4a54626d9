#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace qosm {

/// Error categories surfaced through CLI exit diagnostics.
enum class Errc {
    duplicate_placement,
    dangling_dependency,
    duplicate_primitive,
    invalid_topology,
    insufficient_history,
    insufficient_samples,
    length_mismatch,
    schema_mismatch,
    empty_input,
    missing_value,
    unknown_entity,
    bad_config,
    io_error,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

const char* errc_name(Errc code);

/// Primitive domains: software/hardware control knobs and environmental stimuli.
/// Software controls and environmental primitives belong to service-instances,
/// hardware controls to VMs.
enum class PrimitiveKind {
    SoftwareControl,
    HardwareControl,
    Environmental,
};

const char* to_string(PrimitiveKind kind);
PrimitiveKind primitive_kind_from_string(const std::string& s);

/// Identifies one primitive: the owning entity (a service-instance or VM,
/// addressed by its hierarchical path such as "pm0/vm1/svc2") plus the
/// metric name. (owner, name) is unique within a topology.
struct PrimitiveId {
    std::string owner;
    std::string name;
    PrimitiveKind kind = PrimitiveKind::SoftwareControl;

    auto operator<=>(const PrimitiveId&) const = default;

    std::string label() const { return owner + ":" + name; }
};

/// S_ij: the j-th replica of the i-th concrete service.
struct ServiceInstanceId {
    int service = 0;
    int replica = 0;

    auto operator<=>(const ServiceInstanceId&) const = default;

    std::string label() const {
        return "s" + std::to_string(service) + "." + std::to_string(replica);
    }
};

ServiceInstanceId service_instance_from_label(const std::string& s);

enum class QoSKind {
    ResponseTime,  // ms
    Throughput,    // req/min
    Reliability,   // % completed under a latency threshold
    Availability,  // % of time without request timeouts
};

const char* to_string(QoSKind kind);

struct QoSAttributeSpec {
    std::string name;
    QoSKind kind = QoSKind::ResponseTime;
    double threshold_ms = 0.0;  // reliability/availability only, > 0 there

    auto operator<=>(const QoSAttributeSpec&) const = default;
};

/// The four attribute specs used throughout the evaluation protocol.
QoSAttributeSpec qos_spec(const std::string& name);

}  // namespace qosm
