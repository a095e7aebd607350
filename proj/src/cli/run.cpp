#include <iomanip>
#include <ostream>

#include <CLI11.hpp>

#include "mixedlab/cli.hpp"
#include "mixedlab/config.hpp"

namespace mixedlab::cli {

namespace {

struct Parsed {
    ExperimentConfig cfg;
    bool exit_early = false;
    int status = 0;
};

Parsed parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Parsed p;
    auto& cfg = p.cfg;
    CLI::App app{"Bounds and sweeps for computation with highly mixed states", "mixedlab"};
    std::string format = "csv";
    std::string input, output;

    app.add_option("command", cfg.command, "Command to run")->required()->check(CLI::IsMember(kCommands));
    app.add_option("-i,--input", input, "JSON instance file");
    app.add_option("--seed", cfg.seed, "Base seed; case c uses derive_seed(seed, c)");
    app.add_option("--trials", cfg.trials, "Number of random cases")->check(CLI::PositiveNumber);
    app.add_option("-o,--out", output, "Report file (stdout when omitted)");
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--qubit-cap", cfg.qubit_cap, "Largest register size accepted")->check(CLI::Range(1, 30));
    app.add_option("--tolerance", cfg.tolerance, "Replaces every per-check tolerance");
    app.add_option("--beta", cfg.betas, "Inverse temperatures (thermal, cluster-scan)")->expected(1, -1);
    app.add_option("--delta", cfg.delta, "Min-entropy deficit for classical-solve");
    app.add_option("--failure-target", cfg.failure_target, "Target failure probability for classical-solve");
    app.add_option("--repetitions", cfg.repetitions, "Explicit repetition count for classical-solve");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        p.exit_early = true;
        p.status = app.exit(e, out, err);
        return p;
    } catch (const CLI::ParseError& e) {
        p.exit_early = true;
        app.exit(e, out, err);
        p.status = 2;
        return p;
    }
    if (!input.empty()) cfg.input_path = input;
    if (!output.empty()) cfg.output_path = output;
    cfg.format = format == "json" ? Format::json : Format::csv;
    return p;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Parsed p = parse_args(argc, argv, out, err);
    if (p.exit_early) return p.status;
    const ExperimentConfig& cfg = p.cfg;

    Config lib;
    lib.qubit_cap = cfg.qubit_cap;
    set_config(lib);

    RunReport report;
    try {
        report = run_command(cfg);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }

    try {
        write_report(report, cfg.format, cfg.output_path, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    const Summary s = report.summary();
    err << cfg.command << ": " << s.passes << "/" << s.cases << " checks passed, max violation "
        << format_double(s.max_violation) << ", " << std::fixed << std::setprecision(3) << report.duration_seconds
        << " s\n";
    return s.passes == s.cases ? 0 : 1;
}

}  // namespace mixedlab::cli
