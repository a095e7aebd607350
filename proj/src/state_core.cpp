#include "mixedlab/state_core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace mixedlab {

namespace {

void require_square(const CMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream os;
        os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
        throw ValidationError(os.str());
    }
    if (!m.allFinite()) {
        throw ValidationError(std::string(what) + ": matrix has non-finite entries");
    }
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

void require_hermitian(const CMatrix& m, const char* what) {
    double dev = hermiticity_deviation(m);
    if (!(dev <= config().validation_tol)) {
        std::ostringstream os;
        os << what << ": not Hermitian (max |M - M^dagger| = " << dev << ")";
        throw ValidationError(os.str());
    }
}

void require_unit_trace(const CMatrix& m, const char* what) {
    double tr_re = m.trace().real();
    if (!(std::abs(tr_re - 1.0) <= config().validation_tol)) {
        std::ostringstream os;
        os << what << ": trace is " << tr_re << ", expected 1";
        throw ValidationError(os.str());
    }
}

RVector sorted_descending(const RVector& ascending) { return ascending.reverse(); }

SpectralDecomposition decompose_hermitian(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw InternalConsistencyError("Hermitian eigensolver did not converge");
    }
    SpectralDecomposition out;
    out.eigenvalues = sorted_descending(solver.eigenvalues());
    out.eigenvectors = solver.eigenvectors().rowwise().reverse();
    return out;
}

RVector eigenvalues_descending(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw InternalConsistencyError("Hermitian eigensolver did not converge");
    }
    return sorted_descending(solver.eigenvalues());
}

}  // namespace

int qubits_for_dimension(Eigen::Index dim) {
    if (dim < 2 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
        throw ValidationError("dimension " + std::to_string(dim) + " is not a power of two >= 2");
    }
    return std::countr_zero(static_cast<std::uint64_t>(dim));
}

double hermiticity_deviation(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(CMatrix matrix) {
    require_square(matrix, "HermitianOperator");
    qubits_ = qubits_for_dimension(matrix.rows());
    check_qubit_cap(qubits_, "HermitianOperator");
    require_hermitian(matrix, "HermitianOperator");
    matrix_ = hermitian_part(matrix);
}

DensityOperator::DensityOperator(CMatrix matrix) {
    require_square(matrix, "DensityOperator");
    qubits_ = qubits_for_dimension(matrix.rows());
    check_qubit_cap(qubits_, "DensityOperator");
    require_hermitian(matrix, "DensityOperator");
    require_unit_trace(matrix, "DensityOperator");
    matrix_ = hermitian_part(matrix);
    double smallest = eigenvalues_descending(matrix_).minCoeff();
    if (!(smallest >= -config().validation_tol)) {
        std::ostringstream os;
        os << "DensityOperator: not positive semidefinite (smallest eigenvalue " << smallest << ")";
        throw ValidationError(os.str());
    }
}

DensityOperator::DensityOperator(CMatrix matrix, Trusted) : matrix_(hermitian_part(matrix)) {
    qubits_ = qubits_for_dimension(matrix_.rows());
    check_qubit_cap(qubits_, "DensityOperator");
    if (!matrix_.allFinite()) {
        throw InternalConsistencyError("DensityOperator: non-finite entries in computed state");
    }
}

DensityOperator DensityOperator::from_spectrum(const RVector& eigenvalues, const CMatrix& eigenvectors) {
    if (eigenvectors.rows() != eigenvectors.cols() || eigenvectors.cols() != eigenvalues.size()) {
        throw DimensionError("from_spectrum: eigenvalue count does not match eigenvector matrix");
    }
    if (!eigenvalues.allFinite() || !(eigenvalues.minCoeff() >= -config().validation_tol)) {
        throw ValidationError("from_spectrum: eigenvalues must be finite and non-negative");
    }
    if (!(std::abs(eigenvalues.sum() - 1.0) <= config().validation_tol)) {
        throw ValidationError("from_spectrum: eigenvalues must sum to 1");
    }
    CMatrix m = eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
    DensityOperator out(std::move(m), Trusted{});
    require_unit_trace(out.matrix_, "from_spectrum");
    return out;
}

DensityOperator DensityOperator::pure(const CVector& amplitudes) {
    qubits_for_dimension(amplitudes.size());
    if (!(std::abs(amplitudes.squaredNorm() - 1.0) <= config().validation_tol)) {
        throw ValidationError("pure: state vector is not normalized");
    }
    return DensityOperator(amplitudes * amplitudes.adjoint(), Trusted{});
}

DensityOperator DensityOperator::basis_state(int qubits, std::uint64_t index) {
    if (qubits < 1) throw DomainError("basis_state: qubit count must be >= 1");
    check_qubit_cap(qubits, "basis_state");
    auto dim = dimension_for_qubits(qubits);
    if (index >= static_cast<std::uint64_t>(dim)) {
        throw DomainError("basis_state: index " + std::to_string(index) + " out of range");
    }
    CMatrix m = CMatrix::Zero(dim, dim);
    m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
    return DensityOperator(std::move(m), Trusted{});
}

UnitaryOperator::UnitaryOperator(CMatrix matrix) {
    require_square(matrix, "UnitaryOperator");
    qubits_ = qubits_for_dimension(matrix.rows());
    check_qubit_cap(qubits_, "UnitaryOperator");
    CMatrix gram = matrix * matrix.adjoint();
    double dev = (gram - CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (!(dev <= config().validation_tol)) {
        std::ostringstream os;
        os << "UnitaryOperator: U U^dagger deviates from identity by " << dev;
        throw ValidationError(os.str());
    }
    matrix_ = std::move(matrix);
}

UnitaryOperator UnitaryOperator::identity(int qubits) {
    if (qubits < 1) throw DomainError("identity: qubit count must be >= 1");
    check_qubit_cap(qubits, "identity");
    auto dim = dimension_for_qubits(qubits);
    return UnitaryOperator(CMatrix::Identity(dim, dim));
}

UnitaryOperator UnitaryOperator::adjoint() const { return UnitaryOperator(matrix_.adjoint()); }

CMatrix SpectralDecomposition::reconstruct() const {
    return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b) {
    check_qubit_cap(a.qubits() + b.qubits(), "tensor_product");
    return DensityOperator(kron(a.matrix(), b.matrix()), DensityOperator::Trusted{});
}

HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b) {
    check_qubit_cap(a.qubits() + b.qubits(), "tensor_product");
    return HermitianOperator(kron(a.matrix(), b.matrix()));
}

UnitaryOperator tensor_product(const UnitaryOperator& a, const UnitaryOperator& b) {
    check_qubit_cap(a.qubits() + b.qubits(), "tensor_product");
    return UnitaryOperator(kron(a.matrix(), b.matrix()));
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep) {
    const int q = rho.qubits();
    if (keep.empty()) {
        throw DomainError("partial_trace: keep set is empty (a scalar trace is not a state)");
    }
    std::vector<bool> kept(static_cast<std::size_t>(q), false);
    for (int idx : keep) {
        if (idx < 0 || idx >= q) {
            throw DomainError("partial_trace: qubit index " + std::to_string(idx) + " out of range");
        }
        if (kept[static_cast<std::size_t>(idx)]) {
            throw DomainError("partial_trace: qubit index " + std::to_string(idx) + " repeated");
        }
        kept[static_cast<std::size_t>(idx)] = true;
    }
    std::vector<int> traced;
    for (int idx = 0; idx < q; ++idx) {
        if (!kept[static_cast<std::size_t>(idx)]) traced.push_back(idx);
    }

    // Bit position of qubit i inside a full basis index.
    auto bit_of = [q](int qubit) { return q - 1 - qubit; };
    auto scatter = [&](std::uint64_t sub, const std::vector<int>& qubits) {
        std::uint64_t full = 0;
        const auto m = qubits.size();
        for (std::size_t pos = 0; pos < m; ++pos) {
            std::uint64_t bit = (sub >> (m - 1 - pos)) & 1u;
            full |= bit << bit_of(qubits[pos]);
        }
        return full;
    };

    const std::vector<int> keep_list(keep.begin(), keep.end());
    const auto dk = std::uint64_t{1} << keep_list.size();
    const auto dt = std::uint64_t{1} << traced.size();
    std::vector<std::uint64_t> keep_full(dk), trace_full(dt);
    for (std::uint64_t a = 0; a < dk; ++a) keep_full[a] = scatter(a, keep_list);
    for (std::uint64_t t = 0; t < dt; ++t) trace_full[t] = scatter(t, traced);

    const CMatrix& m = rho.matrix();
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (std::uint64_t a = 0; a < dk; ++a) {
        for (std::uint64_t b = 0; b < dk; ++b) {
            Complex acc = 0.0;
            for (std::uint64_t t = 0; t < dt; ++t) {
                acc += m(static_cast<Eigen::Index>(keep_full[a] | trace_full[t]),
                         static_cast<Eigen::Index>(keep_full[b] | trace_full[t]));
            }
            out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
        }
    }
    return DensityOperator(std::move(out), DensityOperator::Trusted{});
}

SpectralDecomposition spectral_decompose(const HermitianOperator& op) {
    return decompose_hermitian(op.matrix());
}

SpectralDecomposition spectral_decompose(const DensityOperator& rho) {
    return decompose_hermitian(rho.matrix());
}

SpectralDecomposition spectral_decompose(const CMatrix& matrix) {
    require_square(matrix, "spectral_decompose");
    require_hermitian(matrix, "spectral_decompose");
    return decompose_hermitian(hermitian_part(matrix));
}

RVector spectrum(const DensityOperator& rho) { return eigenvalues_descending(rho.matrix()); }

RVector spectrum(const HermitianOperator& op) { return eigenvalues_descending(op.matrix()); }

DensityOperator apply_unitary(const DensityOperator& rho, const UnitaryOperator& u) {
    if (rho.qubits() != u.qubits()) {
        throw DimensionError("apply_unitary: state has " + std::to_string(rho.qubits()) +
                             " qubits, unitary has " + std::to_string(u.qubits()));
    }
    return DensityOperator(u.matrix() * rho.matrix() * u.matrix().adjoint(), DensityOperator::Trusted{});
}

DensityOperator maximally_mixed(int qubits) {
    if (qubits < 1) throw DomainError("maximally_mixed: qubit count must be >= 1");
    check_qubit_cap(qubits, "maximally_mixed");
    auto dim = dimension_for_qubits(qubits);
    CMatrix m = CMatrix::Identity(dim, dim) / static_cast<double>(dim);
    return DensityOperator(std::move(m), DensityOperator::Trusted{});
}

CMatrix pauli(char label) {
    CMatrix m(2, 2);
    switch (label) {
        case 'I': m << 1.0, 0.0, 0.0, 1.0; break;
        case 'X': m << 0.0, 1.0, 1.0, 0.0; break;
        case 'Y': m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0; break;
        case 'Z': m << 1.0, 0.0, 0.0, -1.0; break;
        default: throw DomainError(std::string("unknown Pauli label '") + label + "'");
    }
    return m;
}

}  // namespace mixedlab
