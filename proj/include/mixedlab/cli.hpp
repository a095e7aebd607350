#pragma once

// Command-line front end. Each command produces a RunReport whose rows are
// sorted by case index; serialization is a pure function of the report, so
// identical configurations give identical bytes.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace mixedlab::cli {

enum class Format { csv, json };

inline const std::vector<std::string> kCommands = {"entropy",      "thermal",         "cluster-scan",
                                                   "mbqc-verify",  "dqc1k-run",       "dqc1k-verify",
                                                   "classical-solve", "mutual-info",  "full-suite"};

struct ExperimentConfig {
    std::string command;
    std::optional<std::string> input_path;
    std::uint64_t seed = 0;
    std::optional<int> trials;  // command default when unset
    std::optional<std::string> output_path;
    Format format = Format::csv;
    int qubit_cap = 12;
    std::optional<double> tolerance;  // replaces every per-check tolerance
    std::vector<double> betas;        // empty: command default grid
    double delta = 0.0;
    double failure_target = 0.05;
    std::optional<std::uint64_t> repetitions;

    /// Everything that influences the rows; the output path is left out.
    nlohmann::json echo() const;
};

/// Malformed command line, unreadable or ill-formed input file. Exit status 2.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Report destination could not be written. Exit status 2.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::int64_t, std::uint64_t, double, bool, std::string>;

struct ReportRow {
    std::size_t case_index = 0;
    std::vector<Cell> cells;  // one per report column
    bool pass = true;
    double violation = 0.0;  // deviation - tolerance; positive iff the check failed
};

struct Summary {
    std::size_t cases = 0;  // rows
    std::size_t passes = 0;
    double max_violation = 0.0;  // largest positive violation, 0 when all pass
};

struct RunReport {
    nlohmann::json config;
    std::vector<std::string> columns;
    std::vector<ReportRow> rows;
    double duration_seconds = 0.0;  // never serialized

    Summary summary() const;
    bool all_pass() const { return summary().passes == rows.size(); }
};

enum class Relation { at_most, equal };

/// One comparison of an observed value against a reference.
struct Check {
    std::string name;
    std::string params;  // semicolon-separated key=value pairs
    Relation relation = Relation::at_most;
    double observed = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
};

/// case,seed,check,params,relation,observed,reference,deviation,tolerance,pass
const std::vector<std::string>& check_columns();
ReportRow check_row(std::size_t case_index, std::uint64_t seed, const Check& c);

/// Shortest decimal that parses back to the same double.
std::string format_double(double x);

/// CSV: header plus one line per row. JSON: {config, rows, summary}, keys sorted.
std::string emit_report(const RunReport& report, Format format);
void write_report(const RunReport& report, Format format, const std::optional<std::string>& path, std::ostream& fallback);

/// Runs one command. Throws InputError for bad inputs and library errors
/// raised after inputs were accepted.
RunReport run_command(const ExperimentConfig& cfg);

/// Parses argv, runs, writes the report. Returns the exit status:
/// 0 all checks pass, 1 a check failed, 2 bad command line / input / output,
/// 3 a library error after inputs were accepted.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mixedlab::cli
