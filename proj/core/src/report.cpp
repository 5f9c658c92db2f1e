#include "numrad/report.hpp"

#include <ostream>

#include <json.hpp>

#include "numrad/errors.hpp"

namespace numrad {

namespace {

using nlohmann::ordered_json;

// Shortest text that round-trips, matching the JSON number output.
std::string number(double v) { return ordered_json(v).dump(); }

ordered_json params_json(const CheckReport& r, const std::optional<SampleTag>& tag) {
    ordered_json p = ordered_json::object();
    p["variant"] = r.variant;
    if (r.t) p["t"] = *r.t;
    if (r.theta) p["theta"] = *r.theta;
    if (tag) {
        p["family"] = tag->family;
        p["dim"] = tag->dim;
        p["sample"] = tag->sample;
    }
    return p;
}

// Quotes a CSV field when it contains a separator or quote.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

} // namespace

ReportFormat parse_report_format(std::string_view text) {
    if (text == "jsonl") return ReportFormat::jsonl;
    if (text == "csv") return ReportFormat::csv;
    throw ConfigError("unknown output format '" + std::string(text) + "' (expected jsonl or csv)");
}

std::string_view to_string(ReportFormat format) { return format == ReportFormat::jsonl ? "jsonl" : "csv"; }

std::string report_to_json(const CheckReport& r, const std::optional<SampleTag>& tag) {
    ordered_json j;
    j["entry_id"] = r.entry_id;
    j["operand_digest"] = r.operand_digest;
    j["params"] = params_json(r, tag);
    j["chain_values"] = r.chain_values;
    j["slack"] = r.slack;
    j["holds"] = r.holds;
    j["tolerance"] = r.tolerance;
    j["elapsed_s"] = r.elapsed_s;
    j["status"] = r.status();
    return j.dump();
}

std::string csv_header() {
    return "entry_id,operand_digest,variant,t,theta,family,dim,sample,chain_values,slack,holds,tolerance,elapsed_s,"
           "status";
}

std::string report_to_csv(const CheckReport& r, const std::optional<SampleTag>& tag) {
    std::string chain;
    for (std::size_t k = 0; k < r.chain_values.size(); ++k) {
        if (k) chain += ';';
        chain += number(r.chain_values[k]);
    }
    std::string line;
    line += r.entry_id + ',' + r.operand_digest + ',' + csv_field(r.variant) + ',';
    line += (r.t ? number(*r.t) : "") + ',';
    line += (r.theta ? number(*r.theta) : "") + ',';
    if (tag)
        line += csv_field(tag->family) + ',' + std::to_string(tag->dim) + ',' + std::to_string(tag->sample) + ',';
    else
        line += ",,,";
    line += chain + ',' + number(r.slack) + ',' + (r.holds ? "true" : "false") + ',' + number(r.tolerance) + ',' +
            number(r.elapsed_s) + ',' + std::string(r.status());
    return line;
}

void write_report(std::ostream& out, ReportFormat format, const CheckReport& report,
                  const std::optional<SampleTag>& tag) {
    out << (format == ReportFormat::jsonl ? report_to_json(report, tag) : report_to_csv(report, tag)) << '\n';
}

} // namespace numrad
