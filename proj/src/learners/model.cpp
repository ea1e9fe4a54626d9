#include "qosm/learners/model.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qosm {

const char* to_string(Algo a) {
    switch (a) {
        case Algo::Armax: return "armax";
        case Algo::Ann: return "ann";
        case Algo::Rt: return "rt";
    }
    return "?";
}

Algo algo_from_string(const std::string& s) {
    if (s == "armax") return Algo::Armax;
    if (s == "ann") return Algo::Ann;
    if (s == "rt") return Algo::Rt;
    throw Error(Errc::bad_config, "unknown learner: " + s);
}

LearnerConfig LearnerConfig::make(Algo a, std::uint64_t seed) {
    LearnerConfig cfg;
    cfg.algo = a;
    cfg.seed = seed;
    if (a != Algo::Armax) cfg.fixed_q = 1;
    return cfg;
}

const std::vector<SchemaEntry>& TrainedModel::schema() const {
    return std::visit([](const auto& m) -> const std::vector<SchemaEntry>& { return m.schema; },
                      impl);
}

double TrainedModel::predict(std::span<const double> input) const {
    return std::visit([&](const auto& m) { return qosm::predict(m, input); }, impl);
}

TrainedModel fit_model(const TrainingSet& data, const LearnerConfig& cfg) {
    TrainedModel out;
    out.algo = cfg.algo;
    switch (cfg.algo) {
        case Algo::Armax:
            out.impl = fit_armax_at(data, cfg.fixed_q.value_or(1), cfg.armax);
            break;
        case Algo::Ann:
            out.impl = fit_ann(data, cfg.ann, cfg.seed);
            break;
        case Algo::Rt:
            out.impl = fit_rt(data, cfg.rt);
            break;
    }
    return out;
}

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

json schema_to_json(const std::vector<SchemaEntry>& schema) {
    json out = json::array();
    for (const auto& e : schema) {
        json je;
        je["lag"] = e.lag;
        if (e.qos_lag) {
            je["qos"] = true;
        } else {
            je["owner"] = e.prim.owner;
            je["name"] = e.prim.name;
            je["kind"] = to_string(e.prim.kind);
        }
        out.push_back(std::move(je));
    }
    return out;
}

std::vector<SchemaEntry> schema_from_json(const json& j) {
    std::vector<SchemaEntry> out;
    for (const auto& je : j) {
        SchemaEntry e;
        e.lag = je.at("lag").get<int>();
        if (je.contains("qos") && je.at("qos").get<bool>()) {
            e.qos_lag = true;
        } else {
            e.prim.owner = je.at("owner").get<std::string>();
            e.prim.name = je.at("name").get<std::string>();
            e.prim.kind = primitive_kind_from_string(je.at("kind").get<std::string>());
        }
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

std::string serialize_model(const TrainedModel& m) {
    json root;
    root["format_version"] = kFormatVersion;
    root["algorithm"] = to_string(m.algo);
    root["schema"] = schema_to_json(m.schema());
    switch (m.algo) {
        case Algo::Armax: {
            const auto& am = std::get<ArmaxModel>(m.impl);
            root["q"] = am.q;
            root["coefficients"] = am.coefficients;
            root["intercept"] = am.intercept;
            break;
        }
        case Algo::Ann: {
            const auto& an = std::get<AnnModel>(m.impl);
            root["hidden"] = an.net.hidden;
            root["weights"] = an.net.w;
            root["col_min"] = an.norm.col_min;
            root["col_span"] = an.norm.col_span;
            root["target_min"] = an.norm.target_min;
            root["target_span"] = an.norm.target_span;
            break;
        }
        case Algo::Rt: {
            const auto& rt = std::get<RtModel>(m.impl);
            json nodes = json::array();
            for (const auto& n : rt.nodes)
                nodes.push_back(json{{"feature", n.feature},
                                     {"threshold", n.threshold},
                                     {"left", n.left},
                                     {"right", n.right},
                                     {"value", n.value}});
            root["nodes"] = std::move(nodes);
            break;
        }
    }
    return root.dump(2) + "\n";
}

TrainedModel parse_model(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(Errc::bad_config, std::string("model parse: ") + e.what());
    }
    try {
        if (root.at("format_version").get<int>() != kFormatVersion)
            throw Error(Errc::bad_config, "unsupported model format version");
        TrainedModel m;
        m.algo = algo_from_string(root.at("algorithm").get<std::string>());
        auto schema = schema_from_json(root.at("schema"));
        switch (m.algo) {
            case Algo::Armax: {
                ArmaxModel am;
                am.schema = schema;
                am.q = root.at("q").get<int>();
                am.coefficients = root.at("coefficients").get<std::vector<double>>();
                am.intercept = root.at("intercept").get<double>();
                m.impl = std::move(am);
                break;
            }
            case Algo::Ann: {
                AnnModel an;
                an.schema = schema;
                an.net.inputs = static_cast<int>(schema.size());
                an.net.hidden = root.at("hidden").get<int>();
                an.net.w = root.at("weights").get<std::vector<double>>();
                an.norm.col_min = root.at("col_min").get<std::vector<double>>();
                an.norm.col_span = root.at("col_span").get<std::vector<double>>();
                an.norm.target_min = root.at("target_min").get<double>();
                an.norm.target_span = root.at("target_span").get<double>();
                m.impl = std::move(an);
                break;
            }
            case Algo::Rt: {
                RtModel rt;
                rt.schema = schema;
                for (const auto& jn : root.at("nodes")) {
                    RtNode n;
                    n.feature = jn.at("feature").get<int>();
                    n.threshold = jn.at("threshold").get<double>();
                    n.left = jn.at("left").get<int>();
                    n.right = jn.at("right").get<int>();
                    n.value = jn.at("value").get<double>();
                    rt.nodes.push_back(n);
                }
                m.impl = std::move(rt);
                break;
            }
        }
        return m;
    } catch (const json::exception& e) {
        throw Error(Errc::bad_config, std::string("model schema: ") + e.what());
    }
}

void save_model_file(const TrainedModel& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::io_error, "cannot write model file: " + path);
    out << serialize_model(m);
}

TrainedModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open model file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

std::string describe_model(const TrainedModel& m) {
    std::ostringstream out;
    out << "algorithm: " << to_string(m.algo) << "\n";
    out << "inputs (" << m.schema().size() << "):\n";
    for (const auto& e : m.schema()) out << "  " << e.label() << "\n";
    switch (m.algo) {
        case Algo::Armax: {
            const auto& am = std::get<ArmaxModel>(m.impl);
            out << "q: " << am.q << "\nintercept: " << am.intercept << "\ncoefficients:";
            for (double c : am.coefficients) out << " " << c;
            out << "\n";
            break;
        }
        case Algo::Ann: {
            const auto& an = std::get<AnnModel>(m.impl);
            out << "hidden units: " << an.net.hidden << "\nweights: " << an.net.w.size()
                << "\n";
            break;
        }
        case Algo::Rt: {
            const auto& rt = std::get<RtModel>(m.impl);
            int leaves = 0;
            for (const auto& n : rt.nodes)
                if (n.feature < 0) ++leaves;
            out << "nodes: " << rt.nodes.size() << " (" << leaves << " leaves)\n";
            break;
        }
    }
    return out.str();
}

}  // namespace qosm
