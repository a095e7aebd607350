#include "mixedlab/dqc1k.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mixedlab/matrix_io.hpp"

namespace mixedlab {

using nlohmann::json;

namespace {

CMatrix controlled(const CMatrix& u) {
    CMatrix m = CMatrix::Identity(4, 4);
    m.bottomRightCorner(2, 2) = u;
    return m;
}

std::size_t expected_arity(const std::string& name) {
    if (name == "CNOT" || name == "CZ" || name == "CU") return 2;
    return 1;
}

}  // namespace

CMatrix gate_matrix(const Gate& gate) {
    const std::string& name = gate.name;
    auto angle = [&]() {
        if (gate.params.size() != 1) throw ValidationError("gate " + name + ": expects exactly one angle parameter");
        return gate.params[0];
    };
    CMatrix m(2, 2);
    const Complex i(0.0, 1.0);
    if (name == "X" || name == "Y" || name == "Z") return pauli(name[0]);
    if (name == "H") {
        m << 1.0, 1.0, 1.0, -1.0;
        return m / std::numbers::sqrt2;
    }
    if (name == "S") {
        m << 1.0, 0.0, 0.0, i;
        return m;
    }
    if (name == "T") {
        m << 1.0, 0.0, 0.0, std::exp(i * (std::numbers::pi / 4.0));
        return m;
    }
    if (name == "RZ") {
        const double t = angle();
        m << std::exp(-i * (t / 2.0)), 0.0, 0.0, std::exp(i * (t / 2.0));
        return m;
    }
    if (name == "RX") {
        const double t = angle();
        m << std::cos(t / 2.0), -i * std::sin(t / 2.0), -i * std::sin(t / 2.0), std::cos(t / 2.0);
        return m;
    }
    if (name == "CNOT") return controlled(pauli('X'));
    if (name == "CZ") return controlled(pauli('Z'));
    if (name == "CU") {
        if (!gate.matrix || gate.matrix->rows() != 2 || gate.matrix->cols() != 2) {
            throw ValidationError("gate CU: needs a 2x2 target matrix");
        }
        // Validates unitarity of the target block.
        UnitaryOperator target(*gate.matrix);
        return controlled(target.matrix());
    }
    throw ValidationError("unknown gate '" + name + "'");
}

CMatrix embed_operator(int total_qubits, const CMatrix& op, std::span<const int> targets) {
    const int m = static_cast<int>(targets.size());
    if (op.rows() != (Eigen::Index{1} << m) || op.cols() != op.rows()) {
        throw DimensionError("embed_operator: operator size does not match target count");
    }
    std::uint64_t target_mask = 0;
    for (int t : targets) {
        if (t < 0 || t >= total_qubits) throw ValidationError("embed_operator: target " + std::to_string(t) + " out of range");
        const std::uint64_t bit = std::uint64_t{1} << (total_qubits - 1 - t);
        if (target_mask & bit) throw ValidationError("embed_operator: repeated target " + std::to_string(t));
        target_mask |= bit;
    }
    auto scatter = [&](std::uint64_t sub) {
        std::uint64_t full = 0;
        for (int pos = 0; pos < m; ++pos) {
            if ((sub >> (m - 1 - pos)) & 1u) full |= std::uint64_t{1} << (total_qubits - 1 - targets[static_cast<std::size_t>(pos)]);
        }
        return full;
    };
    const auto dim = dimension_for_qubits(total_qubits);
    const auto sub_dim = std::uint64_t{1} << m;
    CMatrix full = CMatrix::Zero(dim, dim);
    for (std::uint64_t rest = 0; rest < static_cast<std::uint64_t>(dim); ++rest) {
        if (rest & target_mask) continue;
        for (std::uint64_t a = 0; a < sub_dim; ++a) {
            for (std::uint64_t b = 0; b < sub_dim; ++b) {
                full(static_cast<Eigen::Index>(rest | scatter(a)), static_cast<Eigen::Index>(rest | scatter(b))) =
                    op(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            }
        }
    }
    return full;
}

UnitaryOperator build_unitary(int qubits, std::span<const Gate> gates) {
    if (qubits < 1) throw ValidationError("build_unitary: qubit count must be >= 1");
    check_qubit_cap(qubits, "build_unitary");
    const auto dim = dimension_for_qubits(qubits);
    CMatrix u = CMatrix::Identity(dim, dim);
    for (std::size_t g = 0; g < gates.size(); ++g) {
        const auto& gate = gates[g];
        if (gate.qubits.size() != expected_arity(gate.name)) {
            throw ValidationError("gates[" + std::to_string(g) + "] (" + gate.name + "): expects " +
                                  std::to_string(expected_arity(gate.name)) + " qubit indices");
        }
        u = embed_operator(qubits, gate_matrix(gate), gate.qubits) * u;
    }
    return UnitaryOperator(std::move(u));
}

Dqc1kCircuit::Dqc1kCircuit(int mixed_qubits, int measured_qubits, UnitaryOperator unitary)
    : n_(mixed_qubits), k_(measured_qubits), unitary_(std::move(unitary)) {
    if (n_ < 0) throw ValidationError("Dqc1kCircuit: n must be >= 0");
    if (k_ < 1 || k_ > n_ + 1) {
        throw ValidationError("Dqc1kCircuit: k = " + std::to_string(k_) + " outside [1, n+1]");
    }
    if (unitary_.qubits() != n_ + 1) {
        throw DimensionError("Dqc1kCircuit: unitary acts on " + std::to_string(unitary_.qubits()) +
                             " qubits, expected n+1 = " + std::to_string(n_ + 1));
    }
}

Dqc1kCircuit Dqc1kCircuit::from_gates(int mixed_qubits, int measured_qubits, std::span<const Gate> gates) {
    return Dqc1kCircuit(mixed_qubits, measured_qubits, build_unitary(mixed_qubits + 1, gates));
}

double OutcomeDistribution::total() const {
    double s = 0.0;
    for (double p : probabilities) s += p;
    return s;
}

std::string OutcomeDistribution::bitstring(std::uint64_t z) const {
    std::string s(static_cast<std::size_t>(measured_qubits), '0');
    for (int b = 0; b < measured_qubits; ++b) {
        if ((z >> (measured_qubits - 1 - b)) & 1u) s[static_cast<std::size_t>(b)] = '1';
    }
    return s;
}

DensityOperator dqc1k_input(int mixed_qubits) {
    if (mixed_qubits < 0) throw DomainError("dqc1k_input: n must be >= 0");
    check_qubit_cap(mixed_qubits + 1, "dqc1k_input");
    const DensityOperator clean = DensityOperator::basis_state(1, 0);
    if (mixed_qubits == 0) return clean;
    return tensor_product(clean, maximally_mixed(mixed_qubits));
}

DensityOperator dqc1k_output_state(const Dqc1kCircuit& c) {
    return apply_unitary(dqc1k_input(c.mixed_qubits()), c.unitary());
}

OutcomeDistribution run_dqc1k(const Dqc1kCircuit& c) {
    const DensityOperator out = dqc1k_output_state(c);
    const int k = c.measured_qubits();
    const std::uint64_t block = std::uint64_t{1} << (c.total_qubits() - k);
    OutcomeDistribution d;
    d.measured_qubits = k;
    d.probabilities.assign(std::size_t{1} << k, 0.0);
    for (std::uint64_t z = 0; z < d.probabilities.size(); ++z) {
        double p = 0.0;
        for (std::uint64_t rest = 0; rest < block; ++rest) {
            const auto idx = static_cast<Eigen::Index>(z * block + rest);
            p += out.matrix()(idx, idx).real();
        }
        if (!(p >= -config().validation_tol)) {
            throw InternalConsistencyError("run_dqc1k: negative outcome probability");
        }
        d.probabilities[z] = p;
    }
    if (!(std::abs(d.total() - 1.0) <= config().reconstruction_tol)) {
        throw InternalConsistencyError("run_dqc1k: outcome probabilities do not sum to 1");
    }
    return d;
}

SpectrumVerdict dqc1k_spectrum_check(const Dqc1kCircuit& c) {
    SpectrumVerdict v;
    v.eigenvalues = spectrum(dqc1k_output_state(c));
    const auto half = v.eigenvalues.size() / 2;
    const double flat = std::ldexp(1.0, -c.mixed_qubits());
    for (Eigen::Index j = 0; j < v.eigenvalues.size(); ++j) {
        const double expected = j < half ? flat : 0.0;
        v.max_deviation = std::max(v.max_deviation, std::abs(v.eigenvalues(j) - expected));
    }
    v.pass = v.max_deviation <= config().reconstruction_tol;
    return v;
}

double dqc1k_solution_bound(int measured_qubits) {
    if (measured_qubits < 1) throw DomainError("dqc1k_solution_bound: k must be >= 1");
    return std::ldexp(1.0, measured_qubits - 2);
}

ParallelDqc1kSpec::ParallelDqc1kSpec(int circuits, int repetitions, std::vector<double> per_circuit_success,
                                     std::vector<std::uint64_t> solution_set_sizes)
    : r_(circuits), v_(repetitions), p_(std::move(per_circuit_success)), sizes_(std::move(solution_set_sizes)) {
    if (r_ < 1) throw ValidationError("ParallelDqc1kSpec: r must be >= 1");
    if (v_ < 1) throw ValidationError("ParallelDqc1kSpec: v must be >= 1");
    if (p_.size() != static_cast<std::size_t>(r_) || sizes_.size() != static_cast<std::size_t>(r_)) {
        throw ValidationError("ParallelDqc1kSpec: need one p_i and one |S_i| per circuit");
    }
    for (double p : p_) {
        if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("ParallelDqc1kSpec: p_i must lie in [0, 1]");
    }
}

ParallelBounds parallel_failure_bound(const ParallelDqc1kSpec& spec, int circuit_index, double lambda1,
                                      int mixed_qubits, int measured_qubits) {
    if (circuit_index < 0 || circuit_index >= spec.circuits()) {
        throw ValidationError("parallel_failure_bound: circuit index " + std::to_string(circuit_index) +
                              " out of range");
    }
    if (measured_qubits < 1 || measured_qubits > mixed_qubits + 1) {
        throw ValidationError("parallel_failure_bound: k outside [1, n+1]");
    }
    const auto i = static_cast<std::size_t>(circuit_index);
    const double space = std::ldexp(1.0, measured_qubits);
    const auto size = static_cast<double>(spec.solution_set_sizes()[i]);
    if (size > space) throw ValidationError("parallel_failure_bound: |S_i| exceeds 2^k");
    const double v = spec.repetitions();

    ParallelBounds b;
    b.p_i_bound = size * lambda1 * std::ldexp(1.0, mixed_qubits + 1 - measured_qubits);
    b.exact_failure = std::pow(1.0 - size / space, v);
    b.exponential_failure = std::exp(-spec.per_circuit_success()[i] * v / 2.0);
    b.classical_failure_bound = std::min(b.exact_failure, b.exponential_failure);
    return b;
}

Dqc1kCircuit circuit_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("circuit: expected an object");
    for (const char* f : {"n", "k"}) {
        if (!j.contains(f) || !j[f].is_number_integer()) {
            throw ValidationError(std::string("circuit.") + f + ": expected an integer");
        }
    }
    const int n = j["n"].get<int>();
    const int k = j["k"].get<int>();
    if (n < 0) throw ValidationError("circuit.n: must be >= 0");
    check_qubit_cap(n + 1, "circuit");
    if (j.contains("unitary")) {
        return Dqc1kCircuit(n, k, unitary_from_json(j["unitary"], "circuit.unitary"));
    }
    if (!j.contains("gates") || !j["gates"].is_array()) {
        throw ValidationError("circuit: needs either 'gates' or 'unitary'");
    }
    std::vector<Gate> gates;
    for (std::size_t g = 0; g < j["gates"].size(); ++g) {
        const auto& gj = j["gates"][g];
        const std::string where = "circuit.gates[" + std::to_string(g) + "]";
        if (!gj.is_object() || !gj.contains("name") || !gj["name"].is_string()) {
            throw ValidationError(where + ".name: expected a string");
        }
        if (!gj.contains("qubits") || !gj["qubits"].is_array()) {
            throw ValidationError(where + ".qubits: expected an array");
        }
        Gate gate;
        gate.name = gj["name"].get<std::string>();
        for (const auto& q : gj["qubits"]) {
            if (!q.is_number_integer()) throw ValidationError(where + ".qubits: entries must be integers");
            gate.qubits.push_back(q.get<int>());
        }
        if (gj.contains("params")) {
            if (!gj["params"].is_array()) throw ValidationError(where + ".params: expected an array");
            for (const auto& p : gj["params"]) {
                if (!p.is_number()) throw ValidationError(where + ".params: entries must be numbers");
                gate.params.push_back(p.get<double>());
            }
        }
        if (gj.contains("matrix")) gate.matrix = matrix_from_json(gj["matrix"], where + ".matrix");
        try {
            gate_matrix(gate);
        } catch (const ValidationError& e) {
            throw ValidationError(where + ": " + e.what());
        }
        gates.push_back(std::move(gate));
    }
    try {
        return Dqc1kCircuit::from_gates(n, k, gates);
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("circuit: ") + e.what());
    }
}

json to_json(const OutcomeDistribution& d) {
    json out = json::object();
    for (std::uint64_t z = 0; z < d.probabilities.size(); ++z) out[d.bitstring(z)] = d.probabilities[z];
    return out;
}

}  // namespace mixedlab
