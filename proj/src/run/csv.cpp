#include "qosm/run/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace qosm {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_trace_csv(const TraceLog& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::io_error, "cannot write trace file: " + path);
    out << "interval,entity,metric,value\n";
    auto keys = trace.keys();
    for (long t = trace.first_interval(); t < trace.end_interval(); ++t)
        for (const auto& key : keys)
            out << t << ',' << key.entity << ',' << key.metric << ','
                << format_double(trace.at(key, t)) << '\n';
}

TraceLog read_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open trace file: " + path);
    std::string line;
    if (!std::getline(in, line) || line != "interval,entity,metric,value")
        throw Error(Errc::bad_config, "bad trace header in " + path);

    TraceLog log;
    IntervalTrace row;
    bool row_open = false;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::size_t c1 = line.find(',');
        std::size_t c2 = line.find(',', c1 + 1);
        std::size_t c3 = line.find(',', c2 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos || c3 == std::string::npos)
            throw Error(Errc::bad_config,
                        "malformed trace row at line " + std::to_string(line_no));
        long interval;
        double value;
        auto ir = std::from_chars(line.data(), line.data() + c1, interval);
        auto vr = std::from_chars(line.data() + c3 + 1, line.data() + line.size(), value);
        if (ir.ec != std::errc{} || vr.ec != std::errc{})
            throw Error(Errc::bad_config,
                        "malformed trace row at line " + std::to_string(line_no));
        if (row_open && interval != row.interval) {
            log.append(row);
            row.values.clear();
        }
        row.interval = interval;
        row_open = true;
        row.values[{line.substr(c1 + 1, c2 - c1 - 1), line.substr(c2 + 1, c3 - c2 - 1)}] =
            value;
    }
    if (row_open) log.append(row);
    return log;
}

}  // namespace qosm
