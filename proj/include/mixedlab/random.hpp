#pragma once

// Seeded random instances: Haar unitaries, mixed states of random rank, POVMs.
//
// Every sweep derives one generator per case from (base seed, case index) so
// results do not depend on evaluation order.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "mixedlab/state_core.hpp"

namespace mixedlab {

using Rng = std::mt19937_64;

/// Recorded in reports next to every seed.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64+splitmix64";

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);
inline Rng make_rng(std::uint64_t base, std::uint64_t stream) { return Rng(derive_seed(base, stream)); }

/// Matrix of i.i.d. standard complex Gaussians.
CMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar-distributed unitary from the QR decomposition of a Ginibre matrix.
CMatrix haar_unitary_matrix(Eigen::Index dim, Rng& rng);
UnitaryOperator haar_unitary(int qubits, Rng& rng);

/// Symmetric Dirichlet(1) weights.
RVector dirichlet(int count, Rng& rng);

/// Random rank in [1, 2^q] (or the given rank), Dirichlet spectrum, Haar eigenbasis.
DensityOperator random_density(int qubits, Rng& rng, int rank = 0);

/// Gaussian unitary ensemble sample scaled by `scale`.
HermitianOperator random_hermitian(int qubits, Rng& rng, double scale = 1.0);

/// `elements` positive operators on `qubits` qubits summing to identity. Mixes
/// projective measurements in a random basis with full-rank POVMs.
std::vector<HermitianOperator> random_povm(int qubits, int elements, Rng& rng);

int uniform_int(int lo, int hi, Rng& rng);
double uniform_real(double lo, double hi, Rng& rng);

}  // namespace mixedlab
