#pragma once

// Alice sends a classical input i (probability p_i); Bob applies U_i to his
// state sigma_B. The mutual information between the two registers is bounded
// by N_B - S(sigma_B).

#include <vector>

#include <json.hpp>

#include "mixedlab/state_core.hpp"

namespace mixedlab {

class BipartiteModel {
  public:
    BipartiteModel(std::vector<double> input_probs, std::vector<UnitaryOperator> unitaries,
                   DensityOperator bob_state);

    const std::vector<double>& input_probs() const { return probs_; }
    const std::vector<UnitaryOperator>& unitaries() const { return unitaries_; }
    const DensityOperator& bob_state() const { return bob_; }
    int bob_qubits() const { return bob_.qubits(); }
    /// max(1, ceil(log2(input count))); unused labels carry probability 0.
    int alice_qubits() const;

  private:
    std::vector<double> probs_;
    std::vector<UnitaryOperator> unitaries_;
    DensityOperator bob_;
};

struct MutualInfoReport {
    double mutual_information_bits = 0.0;
    double bound_bits = 0.0;            // N_B - S(sigma_B)
    double bob_marginal_entropy = 0.0;  // S(rho_B)
    std::vector<double> conditional_entropies;  // S(U_i sigma_B U_i^dagger)
};

/// sum_i p_i |i><i|_A (x) U_i sigma_B U_i^dagger, Alice on the high-order qubits.
DensityOperator bipartite_output_state(const BipartiteModel& m);

/// sum_i p_i U_i sigma_B U_i^dagger.
DensityOperator bob_marginal(const BipartiteModel& m);

/// S(rho_B) - sum_i p_i S(sigma_B^i).
MutualInfoReport mutual_information(const BipartiteModel& m);

/// N_B - S(sigma_B).
double mutual_info_bound(const BipartiteModel& m);

/// S(rho_A) + S(rho_B) - S(rho_AB) for a state whose first `alice_qubits` qubits form A.
double mutual_information_joint(const DensityOperator& rho_ab, int alice_qubits);

/// {probs: [...], unitaries: [matrix...], bob_state: matrix}
BipartiteModel bipartite_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BipartiteModel& m);
nlohmann::json to_json(const MutualInfoReport& r);

}  // namespace mixedlab
