#pragma once

// Dense multi-qubit operators.
//
// Qubit 0 is the leftmost (most significant) tensor factor: basis index
// |b_0 b_1 ... b_{q-1}> has b_0 as its highest bit.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mixedlab/config.hpp"

namespace mixedlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Returns q such that dim == 2^q, or throws ValidationError.
int qubits_for_dimension(Eigen::Index dim);

class UnitaryOperator;

inline Eigen::Index dimension_for_qubits(int qubits) { return Eigen::Index{1} << qubits; }

/// Largest absolute entry of m - m^dagger.
double hermiticity_deviation(const CMatrix& m);

class HermitianOperator {
  public:
    explicit HermitianOperator(CMatrix matrix);

    int qubits() const { return qubits_; }
    Eigen::Index dimension() const { return matrix_.rows(); }
    const CMatrix& matrix() const { return matrix_; }

  private:
    int qubits_;
    CMatrix matrix_;
};

class DensityOperator {
  public:
    /// Validates Hermiticity, unit trace and positivity.
    explicit DensityOperator(CMatrix matrix);

    /// Builds sum_k p_k |v_k><v_k| from eigenvalues and orthonormal columns.
    static DensityOperator from_spectrum(const RVector& eigenvalues, const CMatrix& eigenvectors);
    /// |psi><psi| for a normalized state vector.
    static DensityOperator pure(const CVector& amplitudes);
    /// |index><index| on `qubits` qubits.
    static DensityOperator basis_state(int qubits, std::uint64_t index);

    int qubits() const { return qubits_; }
    Eigen::Index dimension() const { return matrix_.rows(); }
    const CMatrix& matrix() const { return matrix_; }
    HermitianOperator as_hermitian() const { return HermitianOperator(matrix_); }

  private:
    struct Trusted {};
    // For results of operations that preserve positivity; only symmetrizes.
    DensityOperator(CMatrix matrix, Trusted);

    friend DensityOperator tensor_product(const DensityOperator&, const DensityOperator&);
    friend DensityOperator partial_trace(const DensityOperator&, std::span<const int>);
    friend DensityOperator apply_unitary(const DensityOperator&, const UnitaryOperator&);
    friend DensityOperator maximally_mixed(int);

    int qubits_;
    CMatrix matrix_;
};

class UnitaryOperator {
  public:
    explicit UnitaryOperator(CMatrix matrix);

    static UnitaryOperator identity(int qubits);

    int qubits() const { return qubits_; }
    Eigen::Index dimension() const { return matrix_.rows(); }
    const CMatrix& matrix() const { return matrix_; }
    UnitaryOperator adjoint() const;

  private:
    int qubits_;
    CMatrix matrix_;
};

/// Eigenpairs of a Hermitian operator, eigenvalues in non-increasing order.
struct SpectralDecomposition {
    RVector eigenvalues;
    CMatrix eigenvectors;  // column k pairs with eigenvalues[k]

    double largest() const { return eigenvalues(0); }
    /// sum_k lambda_k |v_k><v_k|
    CMatrix reconstruct() const;
};

/// Kronecker product with `a` on the high-order qubits.
DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b);
HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b);
UnitaryOperator tensor_product(const UnitaryOperator& a, const UnitaryOperator& b);

/// Reduced state on the qubits listed in `keep`; the output orders qubits as listed.
DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep);
inline DensityOperator partial_trace(const DensityOperator& rho, std::initializer_list<int> keep) {
    return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

SpectralDecomposition spectral_decompose(const HermitianOperator& op);
SpectralDecomposition spectral_decompose(const DensityOperator& rho);
/// Validates Hermiticity of a raw matrix first.
SpectralDecomposition spectral_decompose(const CMatrix& matrix);

/// Eigenvalues only, non-increasing.
RVector spectrum(const DensityOperator& rho);
RVector spectrum(const HermitianOperator& op);

/// U rho U^dagger.
DensityOperator apply_unitary(const DensityOperator& rho, const UnitaryOperator& u);

/// (I/2)^{(x) q}
DensityOperator maximally_mixed(int qubits);

/// 2x2 Pauli matrix for 'I', 'X', 'Y' or 'Z'.
CMatrix pauli(char label);

/// Kronecker product of raw matrices, `a` on the high-order side.
CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace mixedlab
