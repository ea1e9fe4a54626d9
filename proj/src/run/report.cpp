#include "qosm/run/report.hpp"

#include "qosm/core/types.hpp"
#include "qosm/ensemble/smape.hpp"

#include <fstream>

#include <json.hpp>

namespace qosm {

RunSummary summarize(const std::vector<IntervalRecord>& records, int eval_window) {
    RunSummary s;
    s.eval_window = eval_window;
    s.intervals = static_cast<long>(records.size());

    std::vector<const IntervalRecord*> predicted;
    for (const auto& r : records)
        if (r.predicted) predicted.push_back(&r);
    s.predicted = static_cast<long>(predicted.size());
    if (predicted.empty()) return s;

    std::size_t window = std::min<std::size_t>(predicted.size(),
                                               static_cast<std::size_t>(eval_window));
    std::vector<double> preds, actuals;
    double inputs = 0.0;
    for (std::size_t i = predicted.size() - window; i < predicted.size(); ++i) {
        preds.push_back(predicted[i]->prediction);
        actuals.push_back(predicted[i]->actual);
        inputs += static_cast<double>(predicted[i]->selected.size());
    }
    SmapeResult sm = smape_detail(preds, actuals);
    s.smape_percent = sm.percent;
    s.terms_used = sm.terms_used;
    s.terms_skipped = sm.terms_skipped;
    s.mean_inputs = inputs / static_cast<double>(window);
    return s;
}

namespace {

using nlohmann::json;

json summary_to_json(const RunSummary& s) {
    json j;
    j["smape_percent"] = s.smape_percent;
    j["eval_window"] = s.eval_window;
    j["terms_used"] = s.terms_used;
    j["terms_skipped"] = s.terms_skipped;
    j["mean_inputs"] = s.mean_inputs;
    j["intervals"] = s.intervals;
    j["predicted"] = s.predicted;
    j["service"] = s.service;
    j["qos"] = s.qos;
    j["selection"] = s.selection;
    j["learners"] = s.learners;
    j["seed"] = s.seed;
    return j;
}

RunSummary summary_from_json(const json& j) {
    RunSummary s;
    s.smape_percent = j.at("smape_percent").get<double>();
    s.eval_window = j.at("eval_window").get<int>();
    s.terms_used = j.at("terms_used").get<int>();
    s.terms_skipped = j.at("terms_skipped").get<int>();
    s.mean_inputs = j.at("mean_inputs").get<double>();
    s.intervals = j.at("intervals").get<long>();
    s.predicted = j.at("predicted").get<long>();
    s.service = j.at("service").get<std::string>();
    s.qos = j.at("qos").get<std::string>();
    s.selection = j.at("selection").get<std::string>();
    s.learners = j.at("learners").get<std::string>();
    s.seed = j.at("seed").get<std::uint64_t>();
    return s;
}

}  // namespace

void write_report_jsonl(const RunReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::io_error, "cannot write report file: " + path);
    for (const auto& r : report.records) {
        json j;
        j["interval"] = r.interval;
        j["predicted"] = r.predicted;
        if (r.predicted) {
            j["selected"] = r.selected;
            j["chosen"] = r.chosen;
            j["prediction"] = r.prediction;
            j["actual"] = r.actual;
            j["err_term"] = r.err_term;
            j["alpha"] = r.alpha;
            j["beta"] = r.beta;
            j["running_smape"] = r.running_smape;
            json vectors = json::array();
            for (const auto& v : r.vectors)
                vectors.push_back(json{{"algo", v.algo},
                                       {"e_local", v.e_local},
                                       {"e_global", v.e_global},
                                       {"e", v.e}});
            j["vectors"] = std::move(vectors);
        }
        out << j.dump() << '\n';
    }
    out << json{{"summary", summary_to_json(report.summary)}}.dump() << '\n';
}

RunReport read_report_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open report file: " + path);
    RunReport report;
    bool have_summary = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw Error(Errc::bad_config, std::string("report parse: ") + e.what());
        }
        if (j.contains("summary")) {
            report.summary = summary_from_json(j.at("summary"));
            have_summary = true;
            continue;
        }
        IntervalRecord r;
        r.interval = j.at("interval").get<long>();
        r.predicted = j.at("predicted").get<bool>();
        if (r.predicted) {
            r.selected = j.at("selected").get<std::vector<std::string>>();
            r.chosen = j.at("chosen").get<std::string>();
            r.prediction = j.at("prediction").get<double>();
            r.actual = j.at("actual").get<double>();
            r.err_term = j.at("err_term").get<double>();
            r.alpha = j.at("alpha").get<double>();
            r.beta = j.at("beta").get<double>();
            r.running_smape = j.at("running_smape").get<double>();
            for (const auto& jv : j.at("vectors")) {
                VectorRecord v;
                v.algo = jv.at("algo").get<std::string>();
                v.e_local = jv.at("e_local").get<double>();
                v.e_global = jv.at("e_global").get<double>();
                v.e = jv.at("e").get<double>();
                r.vectors.push_back(std::move(v));
            }
        }
        report.records.push_back(std::move(r));
    }
    if (!have_summary)
        throw Error(Errc::bad_config, "report has no summary footer: " + path);
    return report;
}

}  // namespace qosm
