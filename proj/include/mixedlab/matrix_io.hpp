#pragma once

// JSON encoding of dense matrices: {"qubits": q, "re": [...], "im": [...]} with
// real and imaginary parts in row-major order.

#include <string>

#include <json.hpp>

#include "mixedlab/state_core.hpp"

namespace mixedlab {

nlohmann::json matrix_to_json(const CMatrix& m);
/// Throws ValidationError naming `context` and the offending field.
CMatrix matrix_from_json(const nlohmann::json& j, const std::string& context = "matrix");

nlohmann::json to_json(const DensityOperator& rho);
nlohmann::json to_json(const UnitaryOperator& u);
nlohmann::json to_json(const HermitianOperator& h);

DensityOperator density_from_json(const nlohmann::json& j, const std::string& context = "state");
UnitaryOperator unitary_from_json(const nlohmann::json& j, const std::string& context = "unitary");
HermitianOperator hermitian_from_json(const nlohmann::json& j, const std::string& context = "operator");

}  // namespace mixedlab
