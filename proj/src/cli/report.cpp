#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "mixedlab/cli.hpp"
#include "mixedlab/random.hpp"

namespace mixedlab::cli {

using nlohmann::json;

json ExperimentConfig::echo() const {
    json j;
    j["command"] = command;
    j["input"] = input_path ? json(*input_path) : json(nullptr);
    j["seed"] = seed;
    j["trials"] = trials ? json(*trials) : json(nullptr);
    j["format"] = format == Format::csv ? "csv" : "json";
    j["qubit_cap"] = qubit_cap;
    j["tolerance"] = tolerance ? json(*tolerance) : json(nullptr);
    j["beta"] = betas;
    j["delta"] = delta;
    j["failure_target"] = failure_target;
    j["repetitions"] = repetitions ? json(*repetitions) : json(nullptr);
    j["rng"] = std::string(kRngAlgorithm);
    return j;
}

Summary RunReport::summary() const {
    Summary s;
    s.cases = rows.size();
    for (const auto& r : rows) {
        if (r.pass) ++s.passes;
        else s.max_violation = std::max(s.max_violation, r.violation);
    }
    return s;
}

const std::vector<std::string>& check_columns() {
    static const std::vector<std::string> cols = {"case",      "seed",      "check",     "params", "relation",
                                                  "observed",  "reference", "deviation", "tolerance", "pass"};
    return cols;
}

ReportRow check_row(std::size_t case_index, std::uint64_t seed, const Check& c) {
    const double deviation =
        c.relation == Relation::equal ? std::abs(c.observed - c.reference) : c.observed - c.reference;
    ReportRow row;
    row.case_index = case_index;
    // NaN deviations fail.
    row.pass = deviation <= c.tolerance;
    row.violation = std::isnan(deviation) ? INFINITY : deviation - c.tolerance;
    row.cells = {static_cast<std::uint64_t>(case_index),
                 seed,
                 c.name,
                 c.params,
                 std::string(c.relation == Relation::equal ? "==" : "<="),
                 c.observed,
                 c.reference,
                 deviation,
                 c.tolerance,
                 row.pass};
    return row;
}

std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

std::string cell_text(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) return format_double(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else if constexpr (std::is_same_v<T, std::string>) return csv_field(v);
            else return std::to_string(v);
        },
        c);
}

json cell_json(const Cell& c) {
    return std::visit([](const auto& v) { return json(v); }, c);
}

}  // namespace

std::string emit_report(const RunReport& report, Format format) {
    std::vector<const ReportRow*> rows;
    for (const auto& r : report.rows) rows.push_back(&r);
    std::stable_sort(rows.begin(), rows.end(),
                     [](const ReportRow* a, const ReportRow* b) { return a->case_index < b->case_index; });

    if (format == Format::csv) {
        std::string out;
        for (std::size_t c = 0; c < report.columns.size(); ++c) out += (c ? "," : "") + report.columns[c];
        out += '\n';
        for (const auto* r : rows) {
            for (std::size_t c = 0; c < r->cells.size(); ++c) out += (c ? "," : "") + cell_text(r->cells[c]);
            out += '\n';
        }
        return out;
    }

    json j;
    j["config"] = report.config;
    j["rows"] = json::array();
    for (const auto* r : rows) {
        json row = json::object();
        for (std::size_t c = 0; c < r->cells.size(); ++c) row[report.columns[c]] = cell_json(r->cells[c]);
        j["rows"].push_back(std::move(row));
    }
    const Summary s = report.summary();
    j["summary"] = {{"cases", s.cases}, {"passes", s.passes}, {"failures", s.cases - s.passes},
                    {"max_violation", s.max_violation}};
    return j.dump(2) + "\n";
}

void write_report(const RunReport& report, Format format, const std::optional<std::string>& path,
                  std::ostream& fallback) {
    const std::string bytes = emit_report(report, format);
    if (!path) {
        fallback << bytes;
        return;
    }
    std::ofstream f(*path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open output file '" + *path + "'");
    f << bytes;
    f.close();
    if (!f) throw IoError("failed writing output file '" + *path + "'");
}

}  // namespace mixedlab::cli
