#pragma once

// Gibbs states, the ground-shifted partition function, and the cluster-state
// Hamiltonian with its closed-form min-entropy.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mixedlab/state_core.hpp"

namespace mixedlab {

struct PauliTerm {
    double coeff = 0.0;
    std::string paulis;  // one of I, X, Y, Z per qubit, qubit 0 first
};

class HamiltonianSpec {
  public:
    HamiltonianSpec(int qubits, std::vector<PauliTerm> terms);

    int qubits() const { return qubits_; }
    const std::vector<PauliTerm>& terms() const { return terms_; }

    HermitianOperator materialize() const;
    /// Adds c * I.
    HamiltonianSpec shifted(double c) const;

  private:
    int qubits_;
    std::vector<PauliTerm> terms_;
};

/// Dense matrix of a single Pauli string.
CMatrix pauli_string_matrix(const std::string& paulis);

class ClusterGraph {
  public:
    using Edge = std::pair<int, int>;

    /// Edges are stored as sorted (low, high) pairs without duplicates.
    ClusterGraph(int vertices, std::vector<Edge> edges);

    static ClusterGraph path(int vertices);

    int vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::vector<int> neighbors(int v) const;
    bool connected() const;

  private:
    int vertices_;
    std::vector<Edge> edges_;
};

/// One representative of every connected graph on 1..max_vertices vertices up
/// to isomorphism, in a fixed order.
std::vector<ClusterGraph> connected_graph_catalog(int max_vertices);

struct ThermalReport {
    double beta = 0.0;
    double min_entropy_bits = 0.0;         // from diagonalizing the Gibbs state
    double log2_partition_function = 0.0;  // ground energy shifted to 0
    double free_energy_scaled = 0.0;       // -beta F = ln Z, nats
    double ground_energy_shift = 0.0;      // lowest eigenvalue of the unshifted H
};

/// exp(-beta H) / Tr exp(-beta H) through the eigendecomposition of H.
DensityOperator gibbs_state(const HermitianOperator& h, double beta);
DensityOperator gibbs_state(const HamiltonianSpec& h, double beta);

/// Throws InternalConsistencyError when the two routes to H_min disagree.
ThermalReport thermal_min_entropy(const HamiltonianSpec& h, double beta);

/// -sum_i X_i prod_{j in N(i)} Z_j.
HamiltonianSpec cluster_hamiltonian(const ClusterGraph& g);

/// N log2(1 + e^{-2 beta}).
double thermal_cluster_min_entropy_closed_form(int vertices, double beta);

/// (delta_useful - delta_useless) kT ln 2.
double isothermal_work_bound(double delta_useless, double delta_useful, double kT);

nlohmann::json to_json(const HamiltonianSpec& h);
HamiltonianSpec hamiltonian_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ClusterGraph& g);
ClusterGraph graph_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ThermalReport& r);

}  // namespace mixedlab
