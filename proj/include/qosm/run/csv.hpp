#pragma once

#include "qosm/core/trace.hpp"

#include <string>

namespace qosm {

/// Long-format trace file: header `interval,entity,metric,value`, one row
/// per (interval, entity, metric), entities named by their hierarchical
/// path. Values round-trip exactly (shortest form that parses back to the
/// same double).
void write_trace_csv(const TraceLog& trace, const std::string& path);
TraceLog read_trace_csv(const std::string& path);

std::string format_double(double v);

}  // namespace qosm
