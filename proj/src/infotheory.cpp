#include "mixedlab/infotheory.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mixedlab/entropy.hpp"
#include "mixedlab/matrix_io.hpp"

namespace mixedlab {

using nlohmann::json;

BipartiteModel::BipartiteModel(std::vector<double> input_probs, std::vector<UnitaryOperator> unitaries,
                               DensityOperator bob_state)
    : probs_(std::move(input_probs)), unitaries_(std::move(unitaries)), bob_(std::move(bob_state)) {
    if (probs_.empty()) throw ValidationError("BipartiteModel: needs at least one input");
    if (probs_.size() != unitaries_.size()) {
        throw ValidationError("BipartiteModel: " + std::to_string(probs_.size()) + " probabilities for " +
                              std::to_string(unitaries_.size()) + " unitaries");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (!(probs_[i] >= 0.0) || !std::isfinite(probs_[i])) {
            throw ValidationError("BipartiteModel.probs[" + std::to_string(i) + "]: must be finite and >= 0");
        }
        total += probs_[i];
    }
    if (!(std::abs(total - 1.0) <= config().validation_tol)) {
        std::ostringstream os;
        os << "BipartiteModel: input probabilities sum to " << total;
        throw ValidationError(os.str());
    }
    for (std::size_t i = 0; i < unitaries_.size(); ++i) {
        if (unitaries_[i].qubits() != bob_.qubits()) {
            throw DimensionError("BipartiteModel.unitaries[" + std::to_string(i) + "]: acts on " +
                                 std::to_string(unitaries_[i].qubits()) + " qubits, Bob holds " +
                                 std::to_string(bob_.qubits()));
        }
    }
}

int BipartiteModel::alice_qubits() const {
    const auto count = static_cast<std::uint64_t>(probs_.size());
    return std::max(1, static_cast<int>(std::bit_width(count - 1)));
}

DensityOperator bipartite_output_state(const BipartiteModel& m) {
    const int na = m.alice_qubits();
    check_qubit_cap(na + m.bob_qubits(), "bipartite_output_state");
    const auto db = m.bob_state().dimension();
    const auto d = dimension_for_qubits(na) * db;
    CMatrix out = CMatrix::Zero(d, d);
    for (std::size_t i = 0; i < m.input_probs().size(); ++i) {
        const auto off = static_cast<Eigen::Index>(i) * db;
        out.block(off, off, db, db) = m.input_probs()[i] * apply_unitary(m.bob_state(), m.unitaries()[i]).matrix();
    }
    return DensityOperator(std::move(out));
}

DensityOperator bob_marginal(const BipartiteModel& m) {
    const auto db = m.bob_state().dimension();
    CMatrix acc = CMatrix::Zero(db, db);
    for (std::size_t i = 0; i < m.input_probs().size(); ++i) {
        acc += m.input_probs()[i] * apply_unitary(m.bob_state(), m.unitaries()[i]).matrix();
    }
    return DensityOperator(std::move(acc));
}

MutualInfoReport mutual_information(const BipartiteModel& m) {
    MutualInfoReport r;
    r.bob_marginal_entropy = von_neumann_entropy(bob_marginal(m));
    double conditional = 0.0;
    for (std::size_t i = 0; i < m.input_probs().size(); ++i) {
        const double s = von_neumann_entropy(apply_unitary(m.bob_state(), m.unitaries()[i]));
        r.conditional_entropies.push_back(s);
        conditional += m.input_probs()[i] * s;
    }
    r.mutual_information_bits = r.bob_marginal_entropy - conditional;
    r.bound_bits = mutual_info_bound(m);
    if (!(r.mutual_information_bits >= -config().reconstruction_tol)) {
        std::ostringstream os;
        os << "mutual_information: negative value " << r.mutual_information_bits;
        throw InternalConsistencyError(os.str());
    }
    return r;
}

double mutual_info_bound(const BipartiteModel& m) { return m.bob_qubits() - von_neumann_entropy(m.bob_state()); }

double mutual_information_joint(const DensityOperator& rho_ab, int alice_qubits) {
    const int total = rho_ab.qubits();
    if (alice_qubits < 1 || alice_qubits >= total) {
        throw DomainError("mutual_information_joint: A must be a proper non-empty prefix");
    }
    std::vector<int> a(static_cast<std::size_t>(alice_qubits));
    std::vector<int> b(static_cast<std::size_t>(total - alice_qubits));
    std::iota(a.begin(), a.end(), 0);
    std::iota(b.begin(), b.end(), alice_qubits);
    return von_neumann_entropy(partial_trace(rho_ab, a)) + von_neumann_entropy(partial_trace(rho_ab, b)) -
           von_neumann_entropy(rho_ab);
}

BipartiteModel bipartite_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("model: expected an object");
    for (const char* f : {"probs", "unitaries", "bob_state"}) {
        if (!j.contains(f)) throw ValidationError(std::string("model: missing field '") + f + "'");
    }
    if (!j["probs"].is_array()) throw ValidationError("model.probs: expected an array");
    if (!j["unitaries"].is_array()) throw ValidationError("model.unitaries: expected an array");
    std::vector<double> probs;
    for (std::size_t k = 0; k < j["probs"].size(); ++k) {
        if (!j["probs"][k].is_number()) throw ValidationError("model.probs[" + std::to_string(k) + "]: not a number");
        probs.push_back(j["probs"][k].get<double>());
    }
    std::vector<UnitaryOperator> us;
    for (std::size_t k = 0; k < j["unitaries"].size(); ++k) {
        us.push_back(unitary_from_json(j["unitaries"][k], "model.unitaries[" + std::to_string(k) + "]"));
    }
    DensityOperator bob = density_from_json(j["bob_state"], "model.bob_state");
    try {
        return BipartiteModel(std::move(probs), std::move(us), std::move(bob));
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("model: ") + e.what());
    }
}

json to_json(const BipartiteModel& m) {
    json us = json::array();
    for (const auto& u : m.unitaries()) us.push_back(to_json(u));
    return {{"probs", m.input_probs()}, {"unitaries", std::move(us)}, {"bob_state", to_json(m.bob_state())}};
}

json to_json(const MutualInfoReport& r) {
    return {{"mutual_information_bits", r.mutual_information_bits},
            {"bound_bits", r.bound_bits},
            {"bob_marginal_entropy", r.bob_marginal_entropy},
            {"conditional_entropies", r.conditional_entropies}};
}

}  // namespace mixedlab
