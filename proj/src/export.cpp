#include "qcorr/export.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json meta_json(const ExportMeta& meta) {
    ordered_json m;
    m["seed"] = meta.seed;
    m["n"] = meta.n;
    m["version"] = kVersion;
    if (!meta.command.empty()) m["command"] = meta.command;
    return m;
}

ordered_json wrap(const ExportMeta& meta, ordered_json results) {
    ordered_json top;
    top["meta"] = meta_json(meta);
    top["results"] = std::move(results);
    return top;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json tally_results(const TallyMatrix& t) {
    ordered_json r;
    r["n_samples"] = t.n_samples;
    r["n_entangled"] = t.n_entangled;
    r["entangled_fraction"] =
        t.n_samples ? static_cast<double>(t.n_entangled) / t.n_samples : 0.0;
    r["venn_detectors"] = t.venn_detectors;
    ordered_json venn;
    for (std::size_t mask = 0; mask < t.venn.size(); ++mask)
        venn[std::to_string(mask)] = t.venn[mask];
    r["venn"] = std::move(venn);
    r["detected_any"] = t.detected_any();
    ordered_json det, fp;
    for (std::size_t i = 0; i < t.battery.size(); ++i) {
        det[t.battery[i]] = t.battery_detected[i];
        fp[t.battery[i]] = t.battery_false_positives[i];
    }
    r["detected_entangled"] = std::move(det);
    r["false_positives"] = std::move(fp);
    return r;
}

ordered_json hist_json(const Histogram& h) {
    ordered_json out;
    out["lo"] = h.lo;
    out["hi"] = h.hi;
    out["bins"] = h.separable.size();
    out["separable"] = h.separable;
    out["entangled"] = h.entangled;
    return out;
}

}  // namespace

ExportFormat export_format_from(const std::string& name) {
    if (name == "csv") return ExportFormat::csv;
    if (name == "json") return ExportFormat::json;
    throw contract_error("unknown format '" + name + "' (expected csv or json)");
}

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string sweep_to_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    std::string out = "p";
    if (spec.measures.mi) out += ",I_sum,mi_threshold";
    if (spec.measures.pearson) out += ",C_sum,pearson_threshold";
    if (spec.measures.condprob) out += ",S_sum,s_lower,s_upper";
    out += ",ppt_margin,oracle_entangled\n";
    for (const SweepRow& r : rows) {
        out += format_double(r.p);
        if (spec.measures.mi)
            out += "," + format_double(r.I_sum) + "," + format_double(r.mi_threshold);
        if (spec.measures.pearson)
            out += "," + format_double(r.C_sum) + "," + format_double(r.pearson_threshold);
        if (spec.measures.condprob)
            out += "," + format_double(r.S_sum) + "," + format_double(r.s_lower) + "," +
                   format_double(r.s_upper);
        out += "," + format_double(r.ppt_margin) + "," + (r.oracle_entangled ? "1" : "0") + "\n";
    }
    return out;
}

std::string sweep_to_json(const SweepSpec& spec, const std::vector<SweepRow>& rows,
                          const ExportMeta& meta) {
    ordered_json results;
    results["family"] = spec.family;
    results["mub_count"] = spec.mub_count;
    ordered_json jrows = ordered_json::array();
    for (const SweepRow& r : rows) {
        ordered_json row;
        row["p"] = r.p;
        if (spec.measures.mi) {
            row["I_sum"] = r.I_sum;
            row["mi_threshold"] = r.mi_threshold;
        }
        if (spec.measures.pearson) {
            row["C_sum"] = r.C_sum;
            row["pearson_threshold"] = r.pearson_threshold;
        }
        if (spec.measures.condprob) {
            row["S_sum"] = r.S_sum;
            row["s_lower"] = r.s_lower;
            row["s_upper"] = r.s_upper;
        }
        row["ppt_margin"] = r.ppt_margin;
        row["oracle_entangled"] = r.oracle_entangled;
        jrows.push_back(std::move(row));
    }
    results["rows"] = std::move(jrows);
    return dump(wrap(meta, std::move(results)));
}

std::string tally_to_csv(const TallyMatrix& t) {
    std::string out = "key,value\n";
    out += "n_samples," + std::to_string(t.n_samples) + "\n";
    out += "n_entangled," + std::to_string(t.n_entangled) + "\n";
    out += "detected_any," + std::to_string(t.detected_any()) + "\n";
    for (std::size_t i = 0; i < t.battery.size(); ++i) {
        out += "detected_" + t.battery[i] + "," + std::to_string(t.battery_detected[i]) + "\n";
        out += "falsepos_" + t.battery[i] + "," +
               std::to_string(t.battery_false_positives[i]) + "\n";
    }
    for (std::size_t mask = 0; mask < t.venn.size(); ++mask)
        out += "venn_" + std::to_string(mask) + "," + std::to_string(t.venn[mask]) + "\n";
    return out;
}

std::string tally_to_json(const TallyMatrix& t, const ExportMeta& meta) {
    return dump(wrap(meta, tally_results(t)));
}

std::string optimization_to_csv(const OptimizationSummary& s) {
    std::string out = "key,value\n";
    out += "mode," + to_string(s.mode) + "\n";
    out += "n_axes," + std::to_string(s.n_axes) + "\n";
    out += "n_candidates," + std::to_string(s.n_candidates) + "\n";
    out += "n_states," + std::to_string(s.n_states) + "\n";
    out += "n_entangled," + std::to_string(s.n_entangled) + "\n";
    out += "detected_entangled," + std::to_string(s.detected_entangled) + "\n";
    out += "false_positives," + std::to_string(s.false_positives) + "\n";
    out += "detected_fraction," + format_double(s.detected_fraction) + "\n";
    for (std::size_t i = 0; i < s.hist.separable.size(); ++i)
        out += "hist_separable_" + std::to_string(i) + "," +
               std::to_string(s.hist.separable[i]) + "\n";
    for (std::size_t i = 0; i < s.hist.entangled.size(); ++i)
        out += "hist_entangled_" + std::to_string(i) + "," +
               std::to_string(s.hist.entangled[i]) + "\n";
    return out;
}

std::string optimization_to_json(const OptimizationSummary& s, const ExportMeta& meta) {
    ordered_json r;
    r["mode"] = to_string(s.mode);
    r["n_axes"] = s.n_axes;
    r["n_candidates"] = s.n_candidates;
    r["n_states"] = s.n_states;
    r["n_entangled"] = s.n_entangled;
    r["detected_entangled"] = s.detected_entangled;
    r["false_positives"] = s.false_positives;
    r["detected_fraction"] = s.detected_fraction;
    r["histogram"] = hist_json(s.hist);
    return dump(wrap(meta, std::move(r)));
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace qcorr
