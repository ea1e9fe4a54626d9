#include "qosm/core/types.hpp"

namespace qosm {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::duplicate_placement: return "duplicate-placement";
        case Errc::dangling_dependency: return "dangling-dependency";
        case Errc::duplicate_primitive: return "duplicate-primitive";
        case Errc::invalid_topology: return "invalid-topology";
        case Errc::insufficient_history: return "insufficient-history";
        case Errc::insufficient_samples: return "insufficient-samples";
        case Errc::length_mismatch: return "length-mismatch";
        case Errc::schema_mismatch: return "schema-mismatch";
        case Errc::empty_input: return "empty-input";
        case Errc::missing_value: return "missing-value";
        case Errc::unknown_entity: return "unknown-entity";
        case Errc::bad_config: return "bad-config";
        case Errc::io_error: return "io-error";
    }
    return "unknown";
}

const char* to_string(PrimitiveKind kind) {
    switch (kind) {
        case PrimitiveKind::SoftwareControl: return "software";
        case PrimitiveKind::HardwareControl: return "hardware";
        case PrimitiveKind::Environmental: return "environmental";
    }
    return "?";
}

PrimitiveKind primitive_kind_from_string(const std::string& s) {
    if (s == "software") return PrimitiveKind::SoftwareControl;
    if (s == "hardware") return PrimitiveKind::HardwareControl;
    if (s == "environmental") return PrimitiveKind::Environmental;
    throw Error(Errc::bad_config, "unknown primitive kind: " + s);
}

ServiceInstanceId service_instance_from_label(const std::string& s) {
    // "s<i>.<j>"
    if (s.size() < 4 || s[0] != 's')
        throw Error(Errc::bad_config, "bad service-instance label: " + s);
    auto dot = s.find('.');
    if (dot == std::string::npos)
        throw Error(Errc::bad_config, "bad service-instance label: " + s);
    try {
        int i = std::stoi(s.substr(1, dot - 1));
        int j = std::stoi(s.substr(dot + 1));
        return ServiceInstanceId{i, j};
    } catch (const std::exception&) {
        throw Error(Errc::bad_config, "bad service-instance label: " + s);
    }
}

const char* to_string(QoSKind kind) {
    switch (kind) {
        case QoSKind::ResponseTime: return "response_time";
        case QoSKind::Throughput: return "throughput";
        case QoSKind::Reliability: return "reliability";
        case QoSKind::Availability: return "availability";
    }
    return "?";
}

QoSAttributeSpec qos_spec(const std::string& name) {
    if (name == "response_time") return {"response_time", QoSKind::ResponseTime, 0.0};
    if (name == "throughput") return {"throughput", QoSKind::Throughput, 0.0};
    if (name == "reliability") return {"reliability", QoSKind::Reliability, 30.0};
    if (name == "availability") return {"availability", QoSKind::Availability, 60.0};
    throw Error(Errc::bad_config, "unknown QoS attribute: " + name);
}

}  // namespace qosm
