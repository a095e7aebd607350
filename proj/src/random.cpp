#include "mixedlab/random.hpp"

#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace mixedlab {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return splitmix64(splitmix64(base) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

int uniform_int(int lo, int hi, Rng& rng) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double uniform_real(double lo, double hi, Rng& rng) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

CMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix g(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) {
            double re = normal(rng);
            double im = normal(rng);
            g(r, c) = Complex(re, im) / std::sqrt(2.0);
        }
    }
    return g;
}

CMatrix haar_unitary_matrix(Eigen::Index dim, Rng& rng) {
    CMatrix z = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phases of R's diagonal so the distribution is exactly Haar.
    for (Eigen::Index k = 0; k < dim; ++k) {
        Complex d = r(k, k);
        double mag = std::abs(d);
        q.col(k) *= (mag > 0.0) ? d / mag : Complex(1.0);
    }
    return q;
}

UnitaryOperator haar_unitary(int qubits, Rng& rng) {
    return UnitaryOperator(haar_unitary_matrix(dimension_for_qubits(qubits), rng));
}

RVector dirichlet(int count, Rng& rng) {
    std::exponential_distribution<double> gamma1(1.0);
    RVector w(count);
    for (int k = 0; k < count; ++k) w(k) = gamma1(rng);
    return w / w.sum();
}

DensityOperator random_density(int qubits, Rng& rng, int rank) {
    const auto dim = static_cast<int>(dimension_for_qubits(qubits));
    if (rank <= 0) rank = uniform_int(1, dim, rng);
    if (rank > dim) throw DomainError("random_density: rank exceeds dimension");
    RVector eig = RVector::Zero(dim);
    eig.head(rank) = dirichlet(rank, rng);
    return DensityOperator::from_spectrum(eig, haar_unitary_matrix(dim, rng));
}

HermitianOperator random_hermitian(int qubits, Rng& rng, double scale) {
    const auto dim = dimension_for_qubits(qubits);
    CMatrix g = ginibre(dim, dim, rng);
    return HermitianOperator(scale * 0.5 * (g + g.adjoint()));
}

std::vector<HermitianOperator> random_povm(int qubits, int elements, Rng& rng) {
    if (elements < 1) throw DomainError("random_povm: need at least one element");
    const auto dim = dimension_for_qubits(qubits);
    std::vector<CMatrix> parts;
    if (std::bernoulli_distribution(0.5)(rng)) {
        // Projective: distribute the columns of a Haar basis over the outcomes.
        CMatrix basis = haar_unitary_matrix(dim, rng);
        parts.assign(static_cast<std::size_t>(elements), CMatrix::Zero(dim, dim));
        for (Eigen::Index c = 0; c < dim; ++c) {
            auto j = static_cast<std::size_t>(uniform_int(0, elements - 1, rng));
            parts[j] += basis.col(c) * basis.col(c).adjoint();
        }
    } else {
        CMatrix total = CMatrix::Zero(dim, dim);
        for (int j = 0; j < elements; ++j) {
            CMatrix g = ginibre(dim, dim, rng);
            parts.push_back(g * g.adjoint());
            total += parts.back();
        }
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (total + total.adjoint()));
        RVector inv_sqrt = solver.eigenvalues().cwiseSqrt().cwiseInverse();
        CMatrix t = solver.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
        for (auto& p : parts) p = t * p * t;
    }
    std::vector<HermitianOperator> out;
    out.reserve(parts.size());
    for (auto& p : parts) out.emplace_back(0.5 * (p + p.adjoint()));
    return out;
}

}  // namespace mixedlab
