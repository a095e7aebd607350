#include "mixedlab/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "mixedlab/entropy.hpp"

namespace mixedlab {

using nlohmann::json;

HamiltonianSpec::HamiltonianSpec(int qubits, std::vector<PauliTerm> terms)
    : qubits_(qubits), terms_(std::move(terms)) {
    if (qubits_ < 1) throw ValidationError("HamiltonianSpec: qubit count must be >= 1");
    check_qubit_cap(qubits_, "HamiltonianSpec");
    for (std::size_t t = 0; t < terms_.size(); ++t) {
        const auto& term = terms_[t];
        const std::string where = "HamiltonianSpec.terms[" + std::to_string(t) + "]";
        if (term.paulis.size() != static_cast<std::size_t>(qubits_)) {
            throw ValidationError(where + ": Pauli string length " + std::to_string(term.paulis.size()) +
                                  " != qubits " + std::to_string(qubits_));
        }
        if (term.paulis.find_first_not_of("IXYZ") != std::string::npos) {
            throw ValidationError(where + ": labels must be I, X, Y or Z");
        }
        if (!std::isfinite(term.coeff)) throw ValidationError(where + ": coefficient is not finite");
    }
}

CMatrix pauli_string_matrix(const std::string& paulis) {
    const int q = static_cast<int>(paulis.size());
    const auto dim = dimension_for_qubits(q);
    std::uint64_t flip = 0;
    for (int i = 0; i < q; ++i) {
        char c = paulis[static_cast<std::size_t>(i)];
        if (c == 'X' || c == 'Y') flip |= std::uint64_t{1} << (q - 1 - i);
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') pauli(c);  // throws
    }
    CMatrix m = CMatrix::Zero(dim, dim);
    for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(dim); ++x) {
        Complex phase = 1.0;
        for (int i = 0; i < q; ++i) {
            const bool bit = (x >> (q - 1 - i)) & 1u;
            switch (paulis[static_cast<std::size_t>(i)]) {
                case 'Y': phase *= bit ? Complex(0.0, -1.0) : Complex(0.0, 1.0); break;
                case 'Z': if (bit) phase = -phase; break;
                default: break;
            }
        }
        m(static_cast<Eigen::Index>(x ^ flip), static_cast<Eigen::Index>(x)) = phase;
    }
    return m;
}

HermitianOperator HamiltonianSpec::materialize() const {
    const auto dim = dimension_for_qubits(qubits_);
    CMatrix m = CMatrix::Zero(dim, dim);
    for (const auto& term : terms_) m += term.coeff * pauli_string_matrix(term.paulis);
    return HermitianOperator(std::move(m));
}

HamiltonianSpec HamiltonianSpec::shifted(double c) const {
    auto terms = terms_;
    terms.push_back({c, std::string(static_cast<std::size_t>(qubits_), 'I')});
    return HamiltonianSpec(qubits_, std::move(terms));
}

ClusterGraph::ClusterGraph(int vertices, std::vector<Edge> edges) : vertices_(vertices) {
    if (vertices_ < 1) throw ValidationError("ClusterGraph: vertex count must be >= 1");
    std::set<Edge> unique;
    for (auto [a, b] : edges) {
        if (a == b) throw ValidationError("ClusterGraph: self-loop at vertex " + std::to_string(a));
        if (a < 0 || b < 0 || a >= vertices_ || b >= vertices_) {
            throw ValidationError("ClusterGraph: edge (" + std::to_string(a) + ", " + std::to_string(b) +
                                  ") out of range");
        }
        unique.insert({std::min(a, b), std::max(a, b)});
    }
    edges_.assign(unique.begin(), unique.end());
}

ClusterGraph ClusterGraph::path(int vertices) {
    std::vector<Edge> edges;
    for (int v = 0; v + 1 < vertices; ++v) edges.emplace_back(v, v + 1);
    return ClusterGraph(vertices, std::move(edges));
}

std::vector<int> ClusterGraph::neighbors(int v) const {
    std::vector<int> out;
    for (auto [a, b] : edges_) {
        if (a == v) out.push_back(b);
        if (b == v) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool ClusterGraph::connected() const {
    std::vector<int> parent(static_cast<std::size_t>(vertices_));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    };
    int components = vertices_;
    for (auto [a, b] : edges_) {
        int ra = find(a), rb = find(b);
        if (ra != rb) {
            parent[static_cast<std::size_t>(ra)] = rb;
            --components;
        }
    }
    return components == 1;
}

std::vector<ClusterGraph> connected_graph_catalog(int max_vertices) {
    std::vector<ClusterGraph> out;
    for (int n = 1; n <= max_vertices; ++n) {
        std::vector<ClusterGraph::Edge> pairs;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
        // Index of each pair in the edge bitmask.
        auto pair_index = [&](int a, int b) {
            if (a > b) std::swap(a, b);
            return static_cast<int>(std::find(pairs.begin(), pairs.end(), ClusterGraph::Edge{a, b}) - pairs.begin());
        };
        // Masks are visited in increasing order, so a class is first reached at
        // its minimal relabeling, which is taken as the representative.
        std::vector<int> perm(static_cast<std::size_t>(n));
        const std::uint32_t masks = std::uint32_t{1} << pairs.size();
        for (std::uint32_t mask = 0; mask < masks; ++mask) {
            std::vector<ClusterGraph::Edge> edges;
            for (std::size_t p = 0; p < pairs.size(); ++p)
                if (mask >> p & 1u) edges.push_back(pairs[p]);
            ClusterGraph g(n, edges);
            if (!g.connected()) continue;
            std::iota(perm.begin(), perm.end(), 0);
            bool minimal = true;
            do {
                std::uint32_t relabeled = 0;
                for (auto [a, b] : edges)
                    relabeled |= std::uint32_t{1} << pair_index(perm[static_cast<std::size_t>(a)],
                                                                 perm[static_cast<std::size_t>(b)]);
                if (relabeled < mask) minimal = false;
            } while (minimal && std::next_permutation(perm.begin(), perm.end()));
            if (minimal) out.push_back(std::move(g));
        }
    }
    return out;
}

DensityOperator gibbs_state(const HermitianOperator& h, double beta) {
    if (!std::isfinite(beta) || beta < 0.0) {
        std::ostringstream os;
        os << "gibbs_state: beta must be finite and >= 0, got " << beta;
        throw DomainError(os.str());
    }
    SpectralDecomposition eig = spectral_decompose(h);
    const double ground = eig.eigenvalues.minCoeff();
    RVector weights(eig.eigenvalues.size());
    for (Eigen::Index k = 0; k < weights.size(); ++k) {
        weights(k) = std::exp(-beta * (eig.eigenvalues(k) - ground));
    }
    const double z = weights.sum();
    if (!std::isfinite(z) || !(z >= 1.0)) {
        throw InternalConsistencyError("gibbs_state: partition function is not finite");
    }
    return DensityOperator::from_spectrum(weights / z, eig.eigenvectors);
}

DensityOperator gibbs_state(const HamiltonianSpec& h, double beta) { return gibbs_state(h.materialize(), beta); }

ThermalReport thermal_min_entropy(const HamiltonianSpec& h, double beta) {
    if (!std::isfinite(beta) || beta < 0.0) throw DomainError("thermal_min_entropy: beta must be finite and >= 0");
    HermitianOperator op = h.materialize();
    RVector energies = spectrum(op);
    const double ground = energies.minCoeff();
    double z = 0.0;
    for (double e : energies) z += std::exp(-beta * (e - ground));

    ThermalReport r;
    r.beta = beta;
    r.ground_energy_shift = ground;
    r.free_energy_scaled = std::log(z);
    r.log2_partition_function = std::log2(z);
    r.min_entropy_bits = min_entropy(gibbs_state(op, beta));
    const double gap = std::abs(r.min_entropy_bits - r.log2_partition_function);
    if (!(gap <= config().reconstruction_tol)) {
        std::ostringstream os;
        os << "thermal_min_entropy: H_min " << r.min_entropy_bits << " disagrees with log2 Z "
           << r.log2_partition_function << " by " << gap;
        throw InternalConsistencyError(os.str());
    }
    return r;
}

HamiltonianSpec cluster_hamiltonian(const ClusterGraph& g) {
    const int n = g.vertices();
    std::vector<PauliTerm> terms;
    terms.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::string s(static_cast<std::size_t>(n), 'I');
        s[static_cast<std::size_t>(i)] = 'X';
        for (int j : g.neighbors(i)) s[static_cast<std::size_t>(j)] = 'Z';
        terms.push_back({-1.0, std::move(s)});
    }
    return HamiltonianSpec(n, std::move(terms));
}

double thermal_cluster_min_entropy_closed_form(int vertices, double beta) {
    if (vertices < 1) throw DomainError("closed form: vertex count must be >= 1");
    if (!(beta >= 0.0)) throw DomainError("closed form: beta must be >= 0");
    return vertices * std::log2(1.0 + std::exp(-2.0 * beta));
}

double isothermal_work_bound(double delta_useless, double delta_useful, double kT) {
    if (!(delta_useless >= 0.0) || !(delta_useful >= delta_useless)) {
        throw DomainError("isothermal_work_bound: need 0 <= delta_useless <= delta_useful");
    }
    if (!(kT > 0.0)) throw DomainError("isothermal_work_bound: kT must be positive");
    return (delta_useful - delta_useless) * kT * std::numbers::ln2;
}

json to_json(const HamiltonianSpec& h) {
    json terms = json::array();
    for (const auto& t : h.terms()) terms.push_back({{"coeff", t.coeff}, {"paulis", t.paulis}});
    return {{"qubits", h.qubits()}, {"terms", std::move(terms)}};
}

HamiltonianSpec hamiltonian_from_json(const json& j) {
    if (!j.is_object() || !j.contains("qubits") || !j["qubits"].is_number_integer()) {
        throw ValidationError("hamiltonian.qubits: expected an integer");
    }
    if (!j.contains("terms") || !j["terms"].is_array()) throw ValidationError("hamiltonian.terms: expected an array");
    std::vector<PauliTerm> terms;
    for (std::size_t k = 0; k < j["terms"].size(); ++k) {
        const auto& t = j["terms"][k];
        const std::string where = "hamiltonian.terms[" + std::to_string(k) + "]";
        if (!t.is_object() || !t.contains("coeff") || !t["coeff"].is_number()) {
            throw ValidationError(where + ".coeff: expected a number");
        }
        if (!t.contains("paulis") || !t["paulis"].is_string()) {
            throw ValidationError(where + ".paulis: expected a string");
        }
        terms.push_back({t["coeff"].get<double>(), t["paulis"].get<std::string>()});
    }
    return HamiltonianSpec(j["qubits"].get<int>(), std::move(terms));
}

json to_json(const ClusterGraph& g) {
    json edges = json::array();
    for (auto [a, b] : g.edges()) edges.push_back({a, b});
    return {{"vertices", g.vertices()}, {"edges", std::move(edges)}};
}

ClusterGraph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_number_integer()) {
        throw ValidationError("graph.vertices: expected an integer");
    }
    std::vector<ClusterGraph::Edge> edges;
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw ValidationError("graph.edges: expected an array");
        for (std::size_t k = 0; k < j["edges"].size(); ++k) {
            const auto& e = j["edges"][k];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
                throw ValidationError("graph.edges[" + std::to_string(k) + "]: expected [a, b]");
            }
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    }
    return ClusterGraph(j["vertices"].get<int>(), std::move(edges));
}

json to_json(const ThermalReport& r) {
    return {{"beta", r.beta},
            {"min_entropy_bits", r.min_entropy_bits},
            {"log2_partition_function", r.log2_partition_function},
            {"free_energy_scaled", r.free_energy_scaled},
            {"ground_energy_shift", r.ground_energy_shift}};
}

}  // namespace mixedlab
