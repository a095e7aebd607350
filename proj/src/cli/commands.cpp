#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "mixedlab/classical_search.hpp"
#include "mixedlab/cli.hpp"
#include "mixedlab/dqc1k.hpp"
#include "mixedlab/entropy.hpp"
#include "mixedlab/infotheory.hpp"
#include "mixedlab/matrix_io.hpp"
#include "mixedlab/mbqc_bound.hpp"
#include "mixedlab/thermal.hpp"

namespace mixedlab::cli {

using nlohmann::json;

namespace {

// Default tolerances per check family.
constexpr double kBoundSlack = 1e-9;
constexpr double kEntropySlack = 1e-9;
constexpr double kClusterTol = 1e-8;
constexpr double kMutualInfoSlack = 1e-8;

constexpr int kCalibrationRuns = 400;
constexpr int kParallelTuples = 1000;

std::string kv(const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::string out;
    for (const auto& [k, v] : pairs) out += (out.empty() ? "" : ";") + k + "=" + v;
    return out;
}

std::string num(double x) { return format_double(x); }
std::string num(std::uint64_t x) { return std::to_string(x); }
std::string num(int x) { return std::to_string(x); }

std::string edges_text(const ClusterGraph& g) {
    std::string out;
    for (auto [a, b] : g.edges()) out += (out.empty() ? "" : " ") + std::to_string(a) + "-" + std::to_string(b);
    return out;
}

std::string qubit_list(const std::vector<int>& qs) {
    std::string out;
    for (int q : qs) out += (out.empty() ? "" : " ") + std::to_string(q);
    return out;
}

json load_input(const ExperimentConfig& cfg) {
    if (!cfg.input_path) throw InputError(cfg.command + ": --input is required");
    std::ifstream f(*cfg.input_path);
    if (!f) throw InputError("cannot read input file '" + *cfg.input_path + "'");
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw InputError(*cfg.input_path + ": " + e.what());
    }
}

// Parse errors surface with the file name and the offending field.
template <class F>
auto parse_input(const ExperimentConfig& cfg, F&& parser) {
    json j = load_input(cfg);
    try {
        return parser(j);
    } catch (const Error& e) {
        throw InputError(*cfg.input_path + ": " + e.what());
    } catch (const json::exception& e) {
        throw InputError(*cfg.input_path + ": " + e.what());
    }
}

// Accumulates rows; every case draws from its own stream of the run seed.
class Sweep {
  public:
    explicit Sweep(const ExperimentConfig& cfg) : cfg_(cfg) {}

    std::size_t open_case() {
        current_ = next_++;
        return current_;
    }
    std::uint64_t seed() const { return derive_seed(cfg_.seed, current_); }
    Rng rng() const { return Rng(seed()); }

    double tol(double fallback) const { return cfg_.tolerance.value_or(fallback); }

    void add(Check c) {
        c.tolerance = tol(c.tolerance);
        rows_.push_back(check_row(current_, seed(), c));
    }
    void add_row(ReportRow row) { rows_.push_back(std::move(row)); }

    int trials(int fallback) const { return cfg_.trials.value_or(fallback); }
    const ExperimentConfig& config() const { return cfg_; }
    std::vector<ReportRow> take() { return std::move(rows_); }

  private:
    const ExperimentConfig& cfg_;
    std::size_t next_ = 0;
    std::size_t current_ = 0;
    std::vector<ReportRow> rows_;
};

std::vector<double> beta_grid(const ExperimentConfig& cfg, std::vector<double> fallback) {
    return cfg.betas.empty() ? fallback : cfg.betas;
}

// ---- entropy ---------------------------------------------------------------

void entropy_checks(Sweep& s, const DensityOperator& rho) {
    auto r = entropy_report(rho);
    const std::string params = kv({{"qubits", num(r.qubits)}, {"deficit_bits", num(r.deficit_bits)}});
    s.add({"min_entropy_le_von_neumann", params, Relation::at_most, r.min_entropy_bits, r.von_neumann_bits,
           kEntropySlack});
    s.add({"von_neumann_le_qubits", params, Relation::at_most, r.von_neumann_bits, static_cast<double>(r.qubits),
           kEntropySlack});
}

void entropy_sweep(Sweep& s, int trials) {
    for (int t = 0; t < trials; ++t) {
        s.open_case();
        Rng rng = s.rng();
        entropy_checks(s, random_density(uniform_int(1, 5, rng), rng));
    }
}

// ---- thermal ---------------------------------------------------------------

void thermal_checks(Sweep& s, const HamiltonianSpec& h, double beta) {
    auto r = thermal_min_entropy(h, beta);
    const std::string params = kv({{"qubits", num(h.qubits())},
                                   {"beta", num(beta)},
                                   {"free_energy_scaled", num(r.free_energy_scaled)},
                                   {"ground_energy_shift", num(r.ground_energy_shift)}});
    s.add({"min_entropy_eq_log2_partition", params, Relation::equal, r.min_entropy_bits, r.log2_partition_function,
           kEntropySlack});
}

HamiltonianSpec random_pauli_hamiltonian(Rng& rng) {
    static constexpr char kLabels[] = {'I', 'X', 'Y', 'Z'};
    const int qubits = uniform_int(1, 4, rng);
    std::vector<PauliTerm> terms;
    const int count = uniform_int(1, 2 * qubits + 2, rng);
    for (int t = 0; t < count; ++t) {
        std::string paulis;
        for (int q = 0; q < qubits; ++q) paulis.push_back(kLabels[uniform_int(0, 3, rng)]);
        terms.push_back({uniform_real(-2.0, 2.0, rng), paulis});
    }
    return HamiltonianSpec(qubits, std::move(terms));
}

void thermal_sweep(Sweep& s, int trials, const std::vector<double>& betas) {
    for (int t = 0; t < trials; ++t) {
        s.open_case();
        Rng rng = s.rng();
        auto h = random_pauli_hamiltonian(rng);
        for (double beta : betas) thermal_checks(s, h, beta);
    }
}

// ---- cluster-scan ----------------------------------------------------------

void cluster_checks(Sweep& s, const ClusterGraph& g, const std::vector<double>& betas) {
    auto h = cluster_hamiltonian(g);
    auto hm = h.materialize();
    for (double beta : betas) {
        s.open_case();
        const double brute = min_entropy(gibbs_state(hm, beta));
        const double closed = thermal_cluster_min_entropy_closed_form(g.vertices(), beta);
        s.add({"cluster_closed_form",
               kv({{"vertices", num(g.vertices())}, {"edges", edges_text(g)}, {"beta", num(beta)}}), Relation::equal,
               brute, closed, kClusterTol});
    }
}

// ---- mbqc-verify -----------------------------------------------------------

MbqcInstance random_mbqc_instance(Rng& rng) {
    const int total = uniform_int(2, 5, rng);
    const int n = uniform_int(1, total - 1, rng);
    std::vector<int> all(static_cast<std::size_t>(total));
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    ResourcePartition part(total, std::vector<int>(all.begin(), all.begin() + n));
    const int elements = uniform_int(2, 4, rng);
    Povm povm(random_povm(total - n, elements, rng));
    const std::uint64_t space = std::uint64_t{1} << n;
    const auto size = static_cast<std::size_t>(uniform_int(0, static_cast<int>(space), rng));
    std::vector<std::vector<std::uint64_t>> sets;
    for (int j = 0; j < elements; ++j) {
        std::vector<std::uint64_t> strings(space);
        std::iota(strings.begin(), strings.end(), 0);
        std::shuffle(strings.begin(), strings.end(), rng);
        strings.resize(size);
        sets.push_back(std::move(strings));
    }
    return {random_density(total, rng), std::move(part), std::move(povm), SolutionFamily(std::move(sets), n)};
}

void mbqc_checks(Sweep& s, const MbqcInstance& inst) {
    const double p = mbqc_success_probability(inst.state, inst.partition, inst.povm, inst.solutions);
    const double lambda1 = spectrum(inst.state)(0);
    const double bound = success_upper_bound(lambda1, inst.partition, inst.solutions.set_size());
    s.add({"mbqc_success_le_bound",
           kv({{"total_qubits", num(inst.partition.total_qubits())},
               {"output_qubits", qubit_list(inst.partition.output_qubits())},
               {"povm_elements", num(static_cast<std::uint64_t>(inst.povm.size()))},
               {"solution_set_size", num(static_cast<std::uint64_t>(inst.solutions.set_size()))},
               {"lambda1", num(lambda1)}}),
           Relation::at_most, p, bound, kBoundSlack});
}

void mbqc_sweep(Sweep& s, int trials) {
    for (int t = 0; t < trials; ++t) {
        s.open_case();
        Rng rng = s.rng();
        mbqc_checks(s, random_mbqc_instance(rng));
    }
}

// ---- dqc1k -----------------------------------------------------------------

void dqc1k_checks(Sweep& s, const Dqc1kCircuit& c, Rng& rng) {
    const std::string params = kv({{"n", num(c.mixed_qubits())}, {"k", num(c.measured_qubits())}});
    auto verdict = dqc1k_spectrum_check(c);
    s.add({"dqc1k_spectrum", params, Relation::equal, verdict.max_deviation, 0.0, config().reconstruction_tol});

    auto dist = run_dqc1k(c);
    const std::uint64_t space = std::uint64_t{1} << c.measured_qubits();
    std::vector<std::uint64_t> all(space);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    const auto size = static_cast<std::size_t>(uniform_int(0, static_cast<int>(space), rng));
    double mass = 0.0;
    for (std::size_t i = 0; i < size; ++i) mass += dist.probability(all[i]);
    s.add({"dqc1k_solution_mass_le_bound",
           params + ";" + kv({{"solution_set_size", num(static_cast<std::uint64_t>(size))}}), Relation::at_most, mass,
           static_cast<double>(size) * std::ldexp(1.0, 1 - c.measured_qubits()), kBoundSlack});
}

void dqc1k_sweep(Sweep& s, int trials) {
    for (int t = 0; t < trials; ++t) {
        s.open_case();
        Rng rng = s.rng();
        const int n = uniform_int(1, 4, rng);
        const int k = uniform_int(1, n + 1, rng);
        Dqc1kCircuit c(n, k, haar_unitary(n + 1, rng));
        dqc1k_checks(s, c, rng);
    }
}

// ---- parallel bounds --------------------------------------------------------

void parallel_sweep(Sweep& s, int tuples) {
    for (int t = 0; t < tuples; ++t) {
        s.open_case();
        Rng rng = s.rng();
        const int n = uniform_int(1, 10, rng);
        const int k = uniform_int(1, n + 1, rng);
        const auto space = std::uint64_t{1} << k;
        const auto size = static_cast<std::uint64_t>(uniform_int(1, static_cast<int>(space), rng));
        const int v = uniform_int(1, 200, rng);
        // For the DQC1 input lambda_1 = 2^{-n}, so p_i <= 2|S_i|/2^k.
        const double lambda1 = std::ldexp(1.0, -n);
        const double cap = std::min(1.0, static_cast<double>(size) * lambda1 * std::ldexp(1.0, n + 1 - k));
        const double p = uniform_real(0.0, cap, rng);
        ParallelDqc1kSpec spec(1, v, {p}, {size});
        auto b = parallel_failure_bound(spec, 0, lambda1, n, k);
        s.add({"parallel_exact_le_exponential",
               kv({{"n", num(n)}, {"k", num(k)}, {"solution_set_size", num(size)}, {"v", num(v)}, {"p", num(p)}}),
               Relation::at_most, b.exact_failure, b.exponential_failure, 0.0});
    }
}

// ---- classical -------------------------------------------------------------

ReportRow solve_row(std::size_t case_index, std::uint64_t seed, std::uint64_t t, const SearchOutcome& out,
                    const PlantedProblem& p) {
    ReportRow row;
    row.case_index = case_index;
    row.pass = !out.found || p.accepts(*out.found);
    row.violation = row.pass ? 0.0 : 1.0;
    row.cells = {static_cast<std::uint64_t>(case_index), seed, t, out.found.has_value(),
                 out.found ? Cell{*out.found} : Cell{std::string()}, out.attempts_used, row.pass};
    return row;
}

// 3-sigma binomial allowance around a target failure rate.
double binomial_ceiling(double p, int runs) { return p + 3.0 * std::sqrt(p * (1.0 - p) / runs); }

void calibration_sweep(Sweep& s, int runs) {
    for (int n = 8; n <= 12; ++n) {
        for (int delta = 0; delta <= 3; ++delta) {
            s.open_case();
            Rng rng = s.rng();
            const auto count = static_cast<std::uint64_t>(std::ceil(std::ldexp(1.0, n - delta - 1)));
            auto problem = PlantedProblem::random(n, count, rng);
            const std::uint64_t t = repetitions_for_failure(delta, 0.05);
            int failures = 0;
            for (int r = 0; r < runs; ++r)
                failures += random_search(problem.oracle(), t, derive_seed(s.seed(), static_cast<std::uint64_t>(r))).found
                                ? 0
                                : 1;
            s.add({"classical_failure_rate",
                   kv({{"n", num(n)}, {"delta", num(delta)}, {"t", num(t)}, {"runs", num(runs)}}), Relation::at_most,
                   static_cast<double>(failures) / runs, binomial_ceiling(0.05, runs), 0.0});
        }
    }
    // Smallest t with (3/4)^t <= 0.05.
    std::uint64_t t = 1;
    while (dqc1k_failure_bound(t) > 0.05) ++t;
    for (int k = 2; k <= 6; ++k) {
        s.open_case();
        Rng rng = s.rng();
        auto problem = PlantedProblem::random(k, std::uint64_t{1} << (k - 2), rng);
        int failures = 0;
        for (int r = 0; r < runs; ++r)
            failures +=
                random_search(problem.oracle(), t, derive_seed(s.seed(), static_cast<std::uint64_t>(r))).found ? 0 : 1;
        s.add({"dqc1k_case_failure_rate", kv({{"k", num(k)}, {"t", num(t)}, {"runs", num(runs)}}), Relation::at_most,
               static_cast<double>(failures) / runs, binomial_ceiling(dqc1k_failure_bound(t), runs), 0.0});
    }
}

// ---- mutual-info -----------------------------------------------------------

BipartiteModel random_bipartite(Rng& rng, std::optional<int> clean_mixed_qubits = std::nullopt) {
    const int na = uniform_int(1, 2, rng);
    const int inputs = 1 << na;
    RVector p = dirichlet(inputs, rng);
    std::vector<double> probs(p.data(), p.data() + p.size());
    const int nb = clean_mixed_qubits ? *clean_mixed_qubits + 1 : uniform_int(1, 3, rng);
    std::vector<UnitaryOperator> us;
    for (int i = 0; i < inputs; ++i) us.push_back(haar_unitary(nb, rng));
    DensityOperator sigma = clean_mixed_qubits ? dqc1k_input(*clean_mixed_qubits) : random_density(nb, rng);
    return BipartiteModel(std::move(probs), std::move(us), std::move(sigma));
}

void mutual_info_checks(Sweep& s, const BipartiteModel& m, const std::string& label) {
    auto r = mutual_information(m);
    const std::string params = kv({{"model", label},
                                   {"inputs", num(static_cast<std::uint64_t>(m.input_probs().size()))},
                                   {"bob_qubits", num(m.bob_qubits())},
                                   {"bob_marginal_entropy", num(r.bob_marginal_entropy)}});
    s.add({"mutual_information_le_bound", params, Relation::at_most, r.mutual_information_bits, r.bound_bits,
           kMutualInfoSlack});
    const double joint = mutual_information_joint(bipartite_output_state(m), m.alice_qubits());
    s.add({"mutual_information_eq_joint", params, Relation::equal, r.mutual_information_bits, joint,
           kMutualInfoSlack});
}

void mutual_info_sweep(Sweep& s, int trials, int clean_cases) {
    for (int t = 0; t < trials; ++t) {
        s.open_case();
        Rng rng = s.rng();
        mutual_info_checks(s, random_bipartite(rng), "random");
    }
    for (int t = 0; t < clean_cases; ++t) {
        s.open_case();
        Rng rng = s.rng();
        const int n = 1 + t % 3;
        auto m = random_bipartite(rng, n);
        s.add({"dqc1_mutual_information_le_one",
               kv({{"n", num(n)}, {"inputs", num(static_cast<std::uint64_t>(m.input_probs().size()))}}),
               Relation::at_most, mutual_information(m).mutual_information_bits, 1.0, kMutualInfoSlack});
    }
}

// ---- commands --------------------------------------------------------------

using Handler = std::function<RunReport(const ExperimentConfig&)>;

RunReport checks_report(const ExperimentConfig& cfg, Sweep& s) {
    RunReport r;
    r.config = cfg.echo();
    r.columns = check_columns();
    r.rows = s.take();
    return r;
}

RunReport cmd_entropy(const ExperimentConfig& cfg) {
    Sweep s(cfg);
    if (cfg.input_path) {
        auto rho = parse_input(cfg, [](const json& j) { return density_from_json(j); });
        s.open_case();
        entropy_checks(s, rho);
    } else {
        entropy_sweep(s, s.trials(100));
    }
    return checks_report(cfg, s);
}

RunReport cmd_thermal(const ExperimentConfig& cfg) {
    Sweep s(cfg);
    const auto betas = beta_grid(cfg, {0.1, 1.0, 5.0});
    if (cfg.input_path) {
        auto h = parse_input(cfg, [](const json& j) { return hamiltonian_from_json(j); });
        check_qubit_cap(h.qubits(), "thermal");
        for (double beta : betas) {
            s.open_case();
            thermal_checks(s, h, beta);
        }
    } else {
        thermal_sweep(s, s.trials(50), betas);
    }
    return checks_report(cfg, s);
}

RunReport cmd_cluster_scan(const ExperimentConfig& cfg) {
    Sweep s(cfg);
    const auto betas = beta_grid(cfg, {0.0, 0.25, 0.5, 1.0, 2.0});
    if (cfg.input_path) {
        auto g = parse_input(cfg, [](const json& j) { return graph_from_json(j); });
        check_qubit_cap(g.vertices(), "cluster-scan");
        cluster_checks(s, g, betas);
    } else {
        for (const auto& g : connected_graph_catalog(5)) cluster_checks(s, g, betas);
    }
    return checks_report(cfg, s);
}

RunReport cmd_mbqc_verify(const ExperimentConfig& cfg) {
    Sweep s(cfg);
    if (cfg.input_path) {
        auto inst = parse_input(cfg, [](const json& j) { return mbqc_instance_from_json(j); });
        s.open_case();
        mbqc_checks(s, inst);
    } else {
        mbqc_sweep(s, s.trials(200));
    }
    return checks_report(cfg, s);
}

RunReport cmd_dqc1k_run(const ExperimentConfig& cfg) {
    auto c = parse_input(cfg, [](const json& j) { return circuit_from_json(j); });
    RunReport r;
    r.config = cfg.echo();
    r.columns = {"case", "seed", "z", "probability"};
    auto dist = run_dqc1k(c);
    const std::uint64_t seed = derive_seed(cfg.seed, 0);
    for (std::uint64_t z = 0; z < dist.probabilities.size(); ++z) {
        ReportRow row;
        row.case_index = 0;
        row.cells = {std::uint64_t{0}, seed, dist.bitstring(z), dist.probability(z)};
        r.rows.push_back(std::move(row));
    }
    return r;
}

RunReport cmd_dqc1k_verify(const ExperimentConfig& cfg) {
    Sweep s(cfg);
    if (cfg.input_path) {
        auto c = parse_input(cfg, [](const json& j) { return circuit_from_json(j); });
        s.open_case();
        Rng rng = s.rng();
        dqc1k_checks(s, c, rng);
    } else {
        dqc1k_sweep(s, s.trials(100));
    }
    return checks_report(cfg, s);
}

RunReport cmd_classical_solve(const ExperimentConfig& cfg) {
    SolverConfig solver;
    solver.delta = cfg.delta;
    solver.failure_target = cfg.failure_target;
    solver.explicit_repetitions = cfg.repetitions;
    try {
        solver.validate();
    } catch (const Error& e) {
        throw InputError(e.what());
    }

    std::optional<PlantedProblem> problem;
    if (cfg.input_path) problem = parse_input(cfg, [](const json& j) { return planted_from_json(j); });

    RunReport r;
    r.config = cfg.echo();
    r.columns = {"case", "seed", "t", "found", "solution", "attempts_used", "pass"};
    if (!problem) {
        // Planted instance at the density the deficit guarantees: |S| = ceil(2^{n-delta-1}).
        constexpr int bits = 10;
        Rng rng(derive_seed(cfg.seed, ~std::uint64_t{0}));
        const auto count = static_cast<std::uint64_t>(std::ceil(std::ldexp(1.0, bits) * std::exp2(-cfg.delta - 1.0)));
        problem = PlantedProblem::random(bits, std::min<std::uint64_t>(count, std::uint64_t{1} << bits), rng);
    }
    const std::uint64_t t = solver.repetitions();
    const int trials = cfg.trials.value_or(kCalibrationRuns);
    auto oracle = problem->oracle();
    for (int c = 0; c < trials; ++c) {
        const auto idx = static_cast<std::size_t>(c);
        const std::uint64_t seed = derive_seed(cfg.seed, idx);
        r.rows.push_back(solve_row(idx, seed, t, random_search(oracle, t, seed), *problem));
    }
    return r;
}

RunReport cmd_mutual_info(const ExperimentConfig& cfg) {
    Sweep s(cfg);
    if (cfg.input_path) {
        auto m = parse_input(cfg, [](const json& j) { return bipartite_from_json(j); });
        check_qubit_cap(m.alice_qubits() + m.bob_qubits(), "mutual-info");
        s.open_case();
        mutual_info_checks(s, m, "input");
    } else {
        mutual_info_sweep(s, s.trials(300), 50);
    }
    return checks_report(cfg, s);
}

RunReport cmd_full_suite(const ExperimentConfig& cfg) {
    if (cfg.input_path) throw InputError("full-suite takes no --input");
    Sweep s(cfg);
    const int trials = s.trials(300);
    entropy_sweep(s, trials);
    thermal_sweep(s, trials, beta_grid(cfg, {0.1, 1.0, 5.0}));
    for (const auto& g : connected_graph_catalog(5)) cluster_checks(s, g, {0.0, 0.25, 0.5, 1.0, 2.0});
    mbqc_sweep(s, trials);
    dqc1k_sweep(s, trials);
    parallel_sweep(s, std::max(trials, kParallelTuples));
    calibration_sweep(s, std::max(trials, kCalibrationRuns));
    mutual_info_sweep(s, trials, 50);
    return checks_report(cfg, s);
}

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> table = {
        {"entropy", cmd_entropy},
        {"thermal", cmd_thermal},
        {"cluster-scan", cmd_cluster_scan},
        {"mbqc-verify", cmd_mbqc_verify},
        {"dqc1k-run", cmd_dqc1k_run},
        {"dqc1k-verify", cmd_dqc1k_verify},
        {"classical-solve", cmd_classical_solve},
        {"mutual-info", cmd_mutual_info},
        {"full-suite", cmd_full_suite},
    };
    return table;
}

}  // namespace

RunReport run_command(const ExperimentConfig& cfg) {
    auto it = handlers().find(cfg.command);
    if (it == handlers().end()) throw InputError("unknown command '" + cfg.command + "'");
    if (cfg.trials && *cfg.trials < 1) throw InputError("--trials must be at least 1");
    for (double beta : cfg.betas)
        if (!std::isfinite(beta) || beta < 0.0) throw InputError("--beta values must be finite and >= 0");
    const auto start = std::chrono::steady_clock::now();
    RunReport r = it->second(cfg);
    r.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace mixedlab::cli
