#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "mixedlab/dqc1k.hpp"
#include "mixedlab/entropy.hpp"
#include "mixedlab/random.hpp"
#include "test_util.hpp"

using namespace mixedlab;
using mixedlab::testing::diag;
using mixedlab::testing::kron_oracle;
using mixedlab::testing::max_abs_diff;

namespace {

Dqc1kCircuit random_circuit(int n, int k, Rng& rng) { return Dqc1kCircuit(n, k, haar_unitary(n + 1, rng)); }

}  // namespace

TEST(Dqc1kInput, Examples) {
    EXPECT_LT(max_abs_diff(dqc1k_input(0).matrix(), diag({1, 0})), 1e-15);
    EXPECT_LT(max_abs_diff(dqc1k_input(2).matrix(), diag({0.25, 0.25, 0.25, 0.25, 0, 0, 0, 0})), 1e-15);
    for (int n = 1; n <= 6; ++n) EXPECT_NEAR(von_neumann_entropy(dqc1k_input(n)), n, 1e-12);
    EXPECT_THROW(dqc1k_input(12), CapacityError);
}

TEST(Gates, MatchHandWrittenMatrices) {
    const double h = 1.0 / std::numbers::sqrt2;
    CMatrix expected_h(2, 2);
    expected_h << h, h, h, -h;
    EXPECT_LT(max_abs_diff(gate_matrix({"H", {0}, {}, {}}), expected_h), 1e-15);
    CMatrix rz = gate_matrix({"RZ", {0}, {std::numbers::pi}, {}});
    EXPECT_LT(max_abs_diff(rz, diag({0, 0}) + CMatrix(Eigen::Vector2cd(Complex(0, -1), Complex(0, 1)).asDiagonal())),
              1e-15);
    CMatrix rx = gate_matrix({"RX", {0}, {std::numbers::pi}, {}});
    EXPECT_LT(max_abs_diff(rx, Complex(0, -1) * pauli('X')), 1e-15);
    EXPECT_THROW(gate_matrix({"RZ", {0}, {}, {}}), ValidationError);
    EXPECT_THROW(gate_matrix({"SWAP", {0, 1}, {}, {}}), ValidationError);
}

TEST(Gates, EmbeddingRespectsQubitOrder) {
    // CNOT with control 1 and target 0 on two qubits: |01> -> |11>.
    std::vector<Gate> gates{{"CNOT", {1, 0}, {}, {}}};
    auto u = build_unitary(2, gates);
    CVector in = CVector::Zero(4);
    in(1) = 1.0;
    CVector out = u.matrix() * in;
    EXPECT_NEAR(std::abs(out(3)), 1.0, 1e-15);

    // X on qubit 0 of three equals X (x) I (x) I.
    std::vector<Gate> x0{{"X", {0}, {}, {}}};
    CMatrix expected = kron_oracle(kron_oracle(pauli('X'), pauli('I')), pauli('I'));
    EXPECT_LT(max_abs_diff(build_unitary(3, x0).matrix(), expected), 1e-15);
}

TEST(Gates, ControlledU) {
    Rng rng(3);
    CMatrix target = haar_unitary_matrix(2, rng);
    std::vector<Gate> gates{{"CU", {0, 1}, {}, target}};
    CMatrix expected = CMatrix::Identity(4, 4);
    expected.bottomRightCorner(2, 2) = target;
    EXPECT_LT(max_abs_diff(build_unitary(2, gates).matrix(), expected), 1e-14);
}

TEST(RunDqc1k, IdentityLeavesCleanQubitAtZero) {
    auto d = run_dqc1k(Dqc1kCircuit(2, 1, UnitaryOperator::identity(3)));
    EXPECT_NEAR(d.probability(0), 1.0, 1e-15);
    EXPECT_NEAR(d.probability(1), 0.0, 1e-15);
}

TEST(RunDqc1k, HadamardOnCleanQubit) {
    std::vector<Gate> gates{{"H", {0}, {}, {}}};
    auto d = run_dqc1k(Dqc1kCircuit::from_gates(1, 1, gates));
    EXPECT_NEAR(d.probability(0), 0.5, 1e-15);
    EXPECT_NEAR(d.probability(1), 0.5, 1e-15);
}

TEST(RunDqc1k, TraceEstimationOfZ) {
    // H, controlled-Z (clean qubit controls), H: P(0) = (1 + Re Tr(Z)/2) / 2.
    std::vector<Gate> gates{{"H", {0}, {}, {}}, {"CZ", {0, 1}, {}, {}}, {"H", {0}, {}, {}}};
    auto c = Dqc1kCircuit::from_gates(1, 1, gates);
    auto d = run_dqc1k(c);

    // Oracle: explicit 4x4 products.
    const double h = 1.0 / std::numbers::sqrt2;
    CMatrix hh(2, 2);
    hh << h, h, h, -h;
    CMatrix h0 = kron_oracle(hh, pauli('I'));
    CMatrix cz = diag({1, 1, 1, -1});
    CMatrix u = h0 * cz * h0;
    CMatrix rho = u * diag({0.5, 0.5, 0, 0}) * u.adjoint();
    const double p0 = (rho(0, 0) + rho(1, 1)).real();
    EXPECT_NEAR(d.probability(0), p0, 1e-14);
    EXPECT_NEAR(d.probability(0), 0.5, 1e-14);

    // Same circuit estimating Tr(S) = 1 + i: P(0) = (1 + 1/2) / 2 = 0.75.
    std::vector<Gate> with_s{{"H", {0}, {}, {}}, {"CU", {0, 1}, {}, gate_matrix({"S", {0}, {}, {}})}, {"H", {0}, {}, {}}};
    EXPECT_NEAR(run_dqc1k(Dqc1kCircuit::from_gates(1, 1, with_s)).probability(0), 0.75, 1e-14);
}

TEST(RunDqc1k, CircuitValidation) {
    EXPECT_THROW(Dqc1kCircuit(2, 0, UnitaryOperator::identity(3)), ValidationError);
    EXPECT_THROW(Dqc1kCircuit(2, 4, UnitaryOperator::identity(3)), ValidationError);
    EXPECT_THROW(Dqc1kCircuit(2, 1, UnitaryOperator::identity(2)), DimensionError);
    // A corrupted non-unitary matrix never becomes a circuit.
    CMatrix bad = CMatrix::Identity(4, 4);
    bad(0, 1) = 0.3;
    EXPECT_THROW(Dqc1kCircuit(1, 1, UnitaryOperator(bad)), ValidationError);
}

TEST(RunDqc1k, NormalizationAndMarginals) {
    Rng rng(61);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = uniform_int(1, 4, rng);
        auto u = haar_unitary(n + 1, rng);
        for (int k = 2; k <= n + 1; ++k) {
            auto fine = run_dqc1k(Dqc1kCircuit(n, k, u));
            auto coarse = run_dqc1k(Dqc1kCircuit(n, k - 1, u));
            EXPECT_NEAR(fine.total(), 1.0, 1e-9);
            for (std::uint64_t z = 0; z < coarse.probabilities.size(); ++z) {
                EXPECT_NEAR(fine.probability(2 * z) + fine.probability(2 * z + 1), coarse.probability(z), 1e-9);
            }
        }
    }
}

TEST(SpectrumCheck, Identity) {
    auto v = dqc1k_spectrum_check(Dqc1kCircuit(3, 1, UnitaryOperator::identity(4)));
    EXPECT_TRUE(v.pass);
    EXPECT_LT(v.max_deviation, 1e-12);
}

TEST(SpectrumCheck, RandomUnitaries) {
    Rng rng(19);
    for (int trial = 0; trial < 50; ++trial) {
        auto v = dqc1k_spectrum_check(random_circuit(2, uniform_int(1, 3, rng), rng));
        EXPECT_TRUE(v.pass) << v.max_deviation;
    }
}

TEST(Dqc1kBounds, SolutionBound) {
    EXPECT_EQ(dqc1k_solution_bound(1), 0.5);
    EXPECT_EQ(dqc1k_solution_bound(2), 1.0);
    EXPECT_EQ(dqc1k_solution_bound(3), 2.0);
    EXPECT_EQ(dqc1k_solution_bound(10), 256.0);
    EXPECT_THROW(dqc1k_solution_bound(0), DomainError);
}

TEST(Dqc1kBounds, SoundnessOnRandomCircuits) {
    Rng rng(73);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = uniform_int(2, 4, rng);
        const int k = uniform_int(1, n + 1, rng);
        auto d = run_dqc1k(random_circuit(n, k, rng));
        const std::uint64_t space = std::uint64_t{1} << k;
        std::vector<std::uint64_t> all(space);
        for (std::uint64_t z = 0; z < space; ++z) all[z] = z;
        std::shuffle(all.begin(), all.end(), rng);
        const auto size = static_cast<std::size_t>(uniform_int(0, static_cast<int>(space), rng));
        double mass = 0.0;
        for (std::size_t s = 0; s < size; ++s) mass += d.probability(all[s]);
        EXPECT_LE(mass, static_cast<double>(size) * std::ldexp(1.0, 1 - k) + 1e-9);
    }
}

TEST(ParallelBounds, Examples) {
    const int n = 3, k = 2;
    ParallelDqc1kSpec spec(2, 4, {0.5, 0.9}, {4, 2});
    auto full = parallel_failure_bound(spec, 0, std::ldexp(1.0, -n), n, k);
    EXPECT_DOUBLE_EQ(full.p_i_bound, 2.0);
    auto half = parallel_failure_bound(spec, 1, std::ldexp(1.0, -n), n, k);
    EXPECT_DOUBLE_EQ(half.exact_failure, 0.0625);

    ParallelDqc1kSpec twenty(1, 20, {0.5}, {1});
    auto e = parallel_failure_bound(twenty, 0, std::ldexp(1.0, -n), n, k);
    EXPECT_NEAR(e.exponential_failure, 0.006737946999085467, 1e-15);
    EXPECT_EQ(e.classical_failure_bound, std::min(e.exact_failure, e.exponential_failure));

    EXPECT_THROW(parallel_failure_bound(spec, 2, 0.1, n, k), ValidationError);
    EXPECT_THROW(ParallelDqc1kSpec(1, 0, {0.5}, {1}), ValidationError);
    EXPECT_THROW(ParallelDqc1kSpec(2, 1, {0.5}, {1}), ValidationError);
    EXPECT_THROW(ParallelDqc1kSpec(1, 1, {1.5}, {1}), ValidationError);
}

TEST(Dqc1kJson, CircuitAndDistribution) {
    auto j = nlohmann::json::parse(R"({"n": 1, "k": 1, "gates": [{"name": "H", "qubits": [0]},
        {"name": "RZ", "qubits": [1], "params": [0.3]}, {"name": "CNOT", "qubits": [0, 1]}]})");
    auto c = circuit_from_json(j);
    EXPECT_EQ(c.total_qubits(), 2);
    auto out = to_json(run_dqc1k(c));
    EXPECT_TRUE(out.contains("0"));
    EXPECT_TRUE(out.contains("1"));

    auto u = nlohmann::json::parse(R"({"n": 0, "k": 1, "unitary": {"qubits": 1, "re": [0,1,1,0], "im": [0,0,0,0]}})");
    EXPECT_NEAR(run_dqc1k(circuit_from_json(u)).probability(1), 1.0, 1e-15);

    EXPECT_THROW(circuit_from_json(nlohmann::json::parse(R"({"n": 1, "k": 1, "gates": [{"name": "H", "qubits": [0, 1]}]})")),
                 ValidationError);
    EXPECT_THROW(circuit_from_json(nlohmann::json::parse(R"({"n": 1, "k": 1})")), ValidationError);
}
