#pragma once

// Entropies in bits.

#include <json.hpp>

#include "mixedlab/state_core.hpp"

namespace mixedlab {

struct EntropyReport {
    double min_entropy_bits = 0.0;
    double von_neumann_bits = 0.0;
    double deficit_bits = 0.0;  // qubits - min_entropy_bits
    int qubits = 0;
};

/// -log2 of the largest eigenvalue, clamped to [0, qubits].
double min_entropy(const DensityOperator& rho);
/// Same, from a non-increasing spectrum of a `qubits`-qubit state.
double min_entropy_from_spectrum(const RVector& eigenvalues, int qubits);

/// -sum lambda log2 lambda, eigenvalues under the configured floor count as zero.
double von_neumann_entropy(const DensityOperator& rho);
double von_neumann_from_spectrum(const RVector& eigenvalues);

/// Shannon entropy of a probability vector, in bits.
double shannon_entropy(std::span<const double> probs);

/// qubits - min_entropy(rho); how far rho is from maximally mixed.
double min_entropy_deficit(const DensityOperator& rho);

/// All three quantities from one diagonalization.
EntropyReport entropy_report(const DensityOperator& rho);

nlohmann::json to_json(const EntropyReport& report);

}  // namespace mixedlab
