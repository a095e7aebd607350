#include "mixedlab/matrix_io.hpp"

namespace mixedlab {

using nlohmann::json;

json matrix_to_json(const CMatrix& m) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            re.push_back(m(r, c).real());
            im.push_back(m(r, c).imag());
        }
    }
    return json{{"qubits", qubits_for_dimension(m.rows())}, {"re", std::move(re)}, {"im", std::move(im)}};
}

CMatrix matrix_from_json(const json& j, const std::string& context) {
    if (!j.is_object()) throw ValidationError(context + ": expected an object");
    for (const char* field : {"qubits", "re", "im"}) {
        if (!j.contains(field)) throw ValidationError(context + ": missing field '" + field + "'");
    }
    if (!j["qubits"].is_number_integer()) throw ValidationError(context + ".qubits: expected an integer");
    const int qubits = j["qubits"].get<int>();
    if (qubits < 1) throw ValidationError(context + ".qubits: must be >= 1");
    check_qubit_cap(qubits, context);
    const auto dim = dimension_for_qubits(qubits);
    const auto expected = static_cast<std::size_t>(dim * dim);
    for (const char* field : {"re", "im"}) {
        const auto& arr = j[field];
        if (!arr.is_array() || arr.size() != expected) {
            throw ValidationError(context + "." + field + ": expected an array of " + std::to_string(expected) +
                                  " numbers");
        }
        for (std::size_t k = 0; k < arr.size(); ++k) {
            if (!arr[k].is_number()) {
                throw ValidationError(context + "." + field + "[" + std::to_string(k) + "]: not a number");
            }
        }
    }
    CMatrix m(dim, dim);
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c, ++k) {
            m(r, c) = Complex(j["re"][k].get<double>(), j["im"][k].get<double>());
        }
    }
    return m;
}

json to_json(const DensityOperator& rho) { return matrix_to_json(rho.matrix()); }
json to_json(const UnitaryOperator& u) { return matrix_to_json(u.matrix()); }
json to_json(const HermitianOperator& h) { return matrix_to_json(h.matrix()); }

namespace {
template <typename Op>
Op build(const json& j, const std::string& context) {
    CMatrix m = matrix_from_json(j, context);
    try {
        return Op(std::move(m));
    } catch (const ValidationError& e) {
        throw ValidationError(context + ": " + e.what());
    }
}
}  // namespace

DensityOperator density_from_json(const json& j, const std::string& context) {
    return build<DensityOperator>(j, context);
}
UnitaryOperator unitary_from_json(const json& j, const std::string& context) {
    return build<UnitaryOperator>(j, context);
}
HermitianOperator hermitian_from_json(const json& j, const std::string& context) {
    return build<HermitianOperator>(j, context);
}

}  // namespace mixedlab
