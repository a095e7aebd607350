#pragma once

// The one-clean-qubit model with k measured output qubits.
//
// The input is |0><0| (x) (I/2)^{(x) n}; the clean qubit is qubit 0 and the
// measured qubits are 0..k-1.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixedlab/state_core.hpp"

namespace mixedlab {

/// One gate from {X, Y, Z, H, S, T, RZ, RX, CNOT, CZ, CU}. Two-qubit gates list
/// the control first. RZ/RX take one angle in `params`; CU takes the target's
/// 2x2 unitary in `matrix`.
struct Gate {
    std::string name;
    std::vector<int> qubits;
    std::vector<double> params;
    std::optional<CMatrix> matrix;
};

/// Local matrix of a gate (2x2 or 4x4).
CMatrix gate_matrix(const Gate& gate);

/// Lifts `op` acting on `targets` (targets[0] most significant) to `total_qubits`.
CMatrix embed_operator(int total_qubits, const CMatrix& op, std::span<const int> targets);

/// Product of the gates, first gate applied first.
UnitaryOperator build_unitary(int qubits, std::span<const Gate> gates);

class Dqc1kCircuit {
  public:
    Dqc1kCircuit(int mixed_qubits, int measured_qubits, UnitaryOperator unitary);
    static Dqc1kCircuit from_gates(int mixed_qubits, int measured_qubits, std::span<const Gate> gates);

    int mixed_qubits() const { return n_; }
    int measured_qubits() const { return k_; }
    int total_qubits() const { return n_ + 1; }
    const UnitaryOperator& unitary() const { return unitary_; }

  private:
    int n_;
    int k_;
    UnitaryOperator unitary_;
};

/// Probabilities over k-bit readouts, indexed by z with qubit 0 as the top bit.
struct OutcomeDistribution {
    int measured_qubits = 0;
    std::vector<double> probabilities;

    double probability(std::uint64_t z) const { return probabilities.at(static_cast<std::size_t>(z)); }
    double total() const;
    std::string bitstring(std::uint64_t z) const;
};

DensityOperator dqc1k_input(int mixed_qubits);

/// Output state U rho_in U^dagger.
DensityOperator dqc1k_output_state(const Dqc1kCircuit& c);

OutcomeDistribution run_dqc1k(const Dqc1kCircuit& c);

struct SpectrumVerdict {
    bool pass = false;
    double max_deviation = 0.0;
    RVector eigenvalues;
};

/// Passes iff U rho_in U^dagger has 2^n eigenvalues 2^{-n} and 2^n zeros.
SpectrumVerdict dqc1k_spectrum_check(const Dqc1kCircuit& c);

/// 2^{k-2}, the smallest |S| compatible with success >= 1/2.
double dqc1k_solution_bound(int measured_qubits);

/// r circuits run in parallel, repeated v times.
class ParallelDqc1kSpec {
  public:
    ParallelDqc1kSpec(int circuits, int repetitions, std::vector<double> per_circuit_success,
                      std::vector<std::uint64_t> solution_set_sizes);

    int circuits() const { return r_; }
    int repetitions() const { return v_; }
    const std::vector<double>& per_circuit_success() const { return p_; }
    const std::vector<std::uint64_t>& solution_set_sizes() const { return sizes_; }

  private:
    int r_;
    int v_;
    std::vector<double> p_;
    std::vector<std::uint64_t> sizes_;
};

struct ParallelBounds {
    double p_i_bound = 0.0;              // |S_i| lambda_1 2^{n+1-k}
    double exact_failure = 0.0;          // (1 - |S_i|/2^k)^v
    double exponential_failure = 0.0;    // exp(-p_i v / 2)
    double classical_failure_bound = 0.0;  // min of the two
};

ParallelBounds parallel_failure_bound(const ParallelDqc1kSpec& spec, int circuit_index, double lambda1,
                                      int mixed_qubits, int measured_qubits);

/// {n, k, gates: [{name, qubits, params?, matrix?}]} or {n, k, unitary}.
Dqc1kCircuit circuit_from_json(const nlohmann::json& j);
/// {"z-bitstring": probability}
nlohmann::json to_json(const OutcomeDistribution& d);

}  // namespace mixedlab
