#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "mixedlab/random.hpp"
#include "mixedlab/state_core.hpp"
#include "test_util.hpp"

using namespace mixedlab;
using mixedlab::testing::diag;
using mixedlab::testing::kron_oracle;
using mixedlab::testing::max_abs_diff;

namespace {

CMatrix bell_phi_plus() {
    CVector v = CVector::Zero(4);
    v(0) = v(3) = 1.0 / std::numbers::sqrt2;
    return v * v.adjoint();
}

}  // namespace

TEST(TensorProduct, MaximallyMixedPair) {
    auto rho = tensor_product(maximally_mixed(1), maximally_mixed(1));
    EXPECT_EQ(rho.qubits(), 2);
    EXPECT_LT(max_abs_diff(rho.matrix(), diag({0.25, 0.25, 0.25, 0.25})), 1e-15);
}

TEST(TensorProduct, ZeroThenOneIsProjectorOntoBasisState01) {
    auto rho = tensor_product(DensityOperator::basis_state(1, 0), DensityOperator::basis_state(1, 1));
    EXPECT_LT(max_abs_diff(rho.matrix(), diag({0, 1, 0, 0})), 1e-15);
}

TEST(TensorProduct, UnnormalizedOperandAcceptedOnlyAsHermitian) {
    CMatrix m = diag({1.0, 0.5});
    EXPECT_NO_THROW(tensor_product(HermitianOperator(m), HermitianOperator(m)));
    EXPECT_THROW(DensityOperator{m}, ValidationError);
}

TEST(TensorProduct, MatchesEntrywiseOracle) {
    Rng rng(11);
    auto a = random_density(2, rng);
    auto b = random_density(1, rng);
    EXPECT_LT(max_abs_diff(tensor_product(a, b).matrix(), kron_oracle(a.matrix(), b.matrix())), 1e-15);
}

TEST(TensorProduct, CapacityError) {
    Config cfg;
    cfg.qubit_cap = 3;
    set_config(cfg);
    EXPECT_THROW(tensor_product(maximally_mixed(2), maximally_mixed(2)), CapacityError);
    EXPECT_THROW(maximally_mixed(4), CapacityError);
    set_config(Config{});
    EXPECT_NO_THROW(tensor_product(maximally_mixed(2), maximally_mixed(2)));
}

TEST(PartialTrace, ProductBasisState) {
    auto rho = DensityOperator::basis_state(2, 0);
    EXPECT_LT(max_abs_diff(partial_trace(rho, {0}).matrix(), diag({1, 0})), 1e-15);
}

TEST(PartialTrace, BellStateReducesToMaximallyMixed) {
    DensityOperator bell(bell_phi_plus());
    EXPECT_LT(max_abs_diff(partial_trace(bell, {0}).matrix(), diag({0.5, 0.5})), 1e-15);
    EXPECT_LT(max_abs_diff(partial_trace(bell, {1}).matrix(), diag({0.5, 0.5})), 1e-15);
}

TEST(PartialTrace, NonContiguousKeep) {
    auto out = partial_trace(maximally_mixed(3), {0, 2});
    EXPECT_EQ(out.qubits(), 2);
    EXPECT_LT(max_abs_diff(out.matrix(), maximally_mixed(2).matrix()), 1e-15);
}

TEST(PartialTrace, KeepingEverythingIsExact) {
    Rng rng(3);
    auto rho = random_density(3, rng);
    auto out = partial_trace(rho, {0, 1, 2});
    EXPECT_TRUE(out.matrix() == rho.matrix());
}

TEST(PartialTrace, KeepOrderPermutesQubits) {
    auto rho = tensor_product(DensityOperator::basis_state(1, 1), DensityOperator::basis_state(1, 0));  // |10>
    auto swapped = partial_trace(rho, {1, 0});
    EXPECT_LT(max_abs_diff(swapped.matrix(), diag({0, 1, 0, 0})), 1e-15);  // |01>
}

TEST(PartialTrace, Errors) {
    auto rho = maximally_mixed(2);
    EXPECT_THROW(partial_trace(rho, std::span<const int>{}), DomainError);
    EXPECT_THROW(partial_trace(rho, {2}), DomainError);
    EXPECT_THROW(partial_trace(rho, {0, 0}), DomainError);
}

TEST(PartialTrace, PreservesTraceAndInvertsTensor) {
    Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        int qa = uniform_int(1, 3, rng);
        int qb = uniform_int(1, 3, rng);
        auto a = random_density(qa, rng);
        auto b = random_density(qb, rng);
        auto ab = tensor_product(a, b);
        std::vector<int> keep_a(static_cast<std::size_t>(qa));
        for (int k = 0; k < qa; ++k) keep_a[static_cast<std::size_t>(k)] = k;
        auto reduced = partial_trace(ab, keep_a);
        EXPECT_LT(max_abs_diff(reduced.matrix(), a.matrix()), 1e-10);
        EXPECT_NEAR(reduced.matrix().trace().real(), 1.0, 1e-10);
        auto rb = partial_trace(ab, {qa + qb - 1});
        EXPECT_NEAR(rb.matrix().trace().real(), 1.0, 1e-10);
    }
}

TEST(SpectralDecompose, SmallExamples) {
    auto s = spectral_decompose(maximally_mixed(1));
    EXPECT_NEAR(s.eigenvalues(0), 0.5, 1e-15);
    EXPECT_NEAR(s.eigenvalues(1), 0.5, 1e-15);

    // |0><0| (x) I/2, the one-mixed-qubit DQC1 input.
    auto dqc1 = tensor_product(DensityOperator::basis_state(1, 0), maximally_mixed(1));
    RVector e = spectral_decompose(dqc1).eigenvalues;
    RVector expected(4);
    expected << 0.5, 0.5, 0.0, 0.0;
    EXPECT_LT((e - expected).cwiseAbs().maxCoeff(), 1e-15);

    RVector d = spectral_decompose(DensityOperator(diag({0.25, 0.5, 0.0, 0.25}))).eigenvalues;
    expected << 0.5, 0.25, 0.25, 0.0;
    EXPECT_LT((d - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SpectralDecompose, RejectsNonHermitian) {
    CMatrix m(2, 2);
    m << 1.0, 1.0, 0.0, 0.0;
    EXPECT_THROW(spectral_decompose(m), ValidationError);
    EXPECT_THROW(HermitianOperator{m}, ValidationError);
}

TEST(SpectralDecompose, RoundTripOnRandomStates) {
    Rng rng(5);
    for (int q = 1; q <= 8; ++q) {
        for (int trial = 0; trial < (q <= 5 ? 10 : 2); ++trial) {
            auto rho = random_density(q, rng);
            auto s = spectral_decompose(rho);
            EXPECT_LT(max_abs_diff(s.reconstruct(), rho.matrix()), 1e-9) << "q=" << q;
            for (Eigen::Index k = 1; k < s.eigenvalues.size(); ++k) EXPECT_GE(s.eigenvalues(k - 1), s.eigenvalues(k));
            EXPECT_GE(s.eigenvalues.minCoeff(), -1e-10);
            EXPECT_NEAR(s.eigenvalues.sum(), 1.0, 1e-9);
            CMatrix gram = s.eigenvectors.adjoint() * s.eigenvectors;
            EXPECT_LT(max_abs_diff(gram, CMatrix::Identity(gram.rows(), gram.cols())), 1e-9);
        }
    }
}

TEST(ApplyUnitary, FixedExamples) {
    Rng rng(8);
    auto u = haar_unitary(1, rng);
    EXPECT_LT(max_abs_diff(apply_unitary(maximally_mixed(1), u).matrix(), diag({0.5, 0.5})), 1e-15);
    UnitaryOperator x(pauli('X'));
    EXPECT_LT(max_abs_diff(apply_unitary(DensityOperator::basis_state(1, 0), x).matrix(), diag({0, 1})), 1e-15);
}

TEST(ApplyUnitary, DimensionMismatch) {
    EXPECT_THROW(apply_unitary(maximally_mixed(2), UnitaryOperator::identity(1)), DimensionError);
}

TEST(ApplyUnitary, SpectrumInvariantOnRandomPairs) {
    // Eigenvalues of rho from its own diagonalization compared against those of
    // U rho U^dagger from a second, independent diagonalization.
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        auto rho = random_density(3, rng);
        auto u = haar_unitary(3, rng);
        RVector before = spectrum(rho);
        RVector after = spectrum(apply_unitary(rho, u));
        EXPECT_LT((before - after).cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(UnitaryOperator, RejectsNonUnitary) {
    CMatrix m = pauli('X');
    m(0, 1) = 1.1;
    EXPECT_THROW(UnitaryOperator{m}, ValidationError);
}

TEST(MaximallyMixed, Entries) {
    EXPECT_LT(max_abs_diff(maximally_mixed(1).matrix(), diag({0.5, 0.5})), 1e-15);
    auto m3 = maximally_mixed(3).matrix();
    EXPECT_LT(max_abs_diff(m3, CMatrix::Identity(8, 8) * 0.125), 1e-15);
    EXPECT_THROW(maximally_mixed(0), DomainError);
    EXPECT_THROW(maximally_mixed(13), CapacityError);
}

TEST(DensityOperator, InvariantGate) {
    EXPECT_THROW(DensityOperator{diag({0.6, 0.6})}, ValidationError);         // trace
    EXPECT_THROW(DensityOperator{diag({1.2, -0.2})}, ValidationError);        // positivity
    EXPECT_THROW(DensityOperator{CMatrix::Identity(3, 3) / 3.0}, ValidationError);  // not 2^q
    CMatrix off = diag({0.5, 0.5});
    off(0, 1) = 0.1;
    EXPECT_THROW(DensityOperator{off}, ValidationError);  // Hermiticity
}

TEST(RandomDensity, CoversRankDeficientAndFullRank) {
    Rng rng(2);
    bool saw_deficient = false, saw_full = false;
    for (int trial = 0; trial < 50; ++trial) {
        RVector e = spectrum(random_density(2, rng));
        int rank = static_cast<int>((e.array() > 1e-12).count());
        saw_deficient |= rank < 4;
        saw_full |= rank == 4;
    }
    EXPECT_TRUE(saw_deficient);
    EXPECT_TRUE(saw_full);
}
