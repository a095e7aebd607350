#include "mixedlab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mixedlab {

double min_entropy_from_spectrum(const RVector& eigenvalues, int qubits) {
    const double top = eigenvalues.size() > 0 ? eigenvalues(0) : 0.0;
    if (!(top > 0.0)) {
        std::ostringstream os;
        os << "min_entropy: largest eigenvalue " << top << " is not positive";
        throw InternalConsistencyError(os.str());
    }
    return std::clamp(-std::log2(top), 0.0, static_cast<double>(qubits));
}

double min_entropy(const DensityOperator& rho) { return min_entropy_from_spectrum(spectrum(rho), rho.qubits()); }

double von_neumann_from_spectrum(const RVector& eigenvalues) {
    const double floor = config().eigenvalue_floor;
    double s = 0.0;
    for (double lambda : eigenvalues) {
        if (lambda > floor) s -= lambda * std::log2(lambda);
    }
    return std::max(s, 0.0);
}

double von_neumann_entropy(const DensityOperator& rho) { return von_neumann_from_spectrum(spectrum(rho)); }

double shannon_entropy(std::span<const double> probs) {
    const double floor = config().eigenvalue_floor;
    double s = 0.0;
    for (double p : probs) {
        if (p > floor) s -= p * std::log2(p);
    }
    return std::max(s, 0.0);
}

double min_entropy_deficit(const DensityOperator& rho) { return rho.qubits() - min_entropy(rho); }

EntropyReport entropy_report(const DensityOperator& rho) {
    RVector eig = spectrum(rho);
    EntropyReport r;
    r.qubits = rho.qubits();
    r.min_entropy_bits = min_entropy_from_spectrum(eig, r.qubits);
    r.von_neumann_bits = std::min(von_neumann_from_spectrum(eig), static_cast<double>(r.qubits));
    r.deficit_bits = r.qubits - r.min_entropy_bits;
    return r;
}

nlohmann::json to_json(const EntropyReport& report) {
    return {{"min_entropy_bits", report.min_entropy_bits},
            {"von_neumann_bits", report.von_neumann_bits},
            {"deficit_bits", report.deficit_bits},
            {"qubits", report.qubits}};
}

}  // namespace mixedlab
