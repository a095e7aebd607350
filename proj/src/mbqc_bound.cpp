#include "mixedlab/mbqc_bound.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "mixedlab/matrix_io.hpp"

namespace mixedlab {

using nlohmann::json;

namespace {

void check_index_set(const std::vector<int>& idx, int total, const char* what, std::vector<bool>& seen) {
    for (int q : idx) {
        if (q < 0 || q >= total) {
            throw ValidationError(std::string(what) + ": qubit " + std::to_string(q) + " out of range");
        }
        if (seen[static_cast<std::size_t>(q)]) {
            throw ValidationError(std::string(what) + ": qubit " + std::to_string(q) + " listed twice");
        }
        seen[static_cast<std::size_t>(q)] = true;
    }
}

std::vector<int> complement(int total, const std::vector<int>& output) {
    std::vector<int> out;
    for (int q = 0; q < total; ++q) {
        if (std::find(output.begin(), output.end(), q) == output.end()) out.push_back(q);
    }
    return out;
}

}  // namespace

ResourcePartition::ResourcePartition(int total_qubits, std::vector<int> output_qubits)
    : ResourcePartition(total_qubits, output_qubits, complement(total_qubits, output_qubits)) {}

ResourcePartition::ResourcePartition(int total_qubits, std::vector<int> output_qubits,
                                     std::vector<int> control_qubits)
    : total_(total_qubits), output_(std::move(output_qubits)), control_(std::move(control_qubits)) {
    if (total_ < 1) throw ValidationError("ResourcePartition: total qubits must be >= 1");
    if (output_.empty()) throw ValidationError("ResourcePartition: output region O must be non-empty");
    std::vector<bool> seen(static_cast<std::size_t>(total_), false);
    check_index_set(output_, total_, "ResourcePartition.output_qubits", seen);
    check_index_set(control_, total_, "ResourcePartition.control_qubits", seen);
    if (static_cast<int>(output_.size() + control_.size()) != total_) {
        throw ValidationError("ResourcePartition: C and O must cover every qubit");
    }
}

Povm::Povm(std::vector<CMatrix> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw ValidationError("Povm: needs at least one element");
    const auto dim = elements_.front().rows();
    qubits_ = dim == 1 ? 0 : qubits_for_dimension(dim);
    CMatrix total = CMatrix::Zero(dim, dim);
    const double tol = config().validation_tol;
    for (std::size_t j = 0; j < elements_.size(); ++j) {
        auto& m = elements_[j];
        const std::string where = "Povm.elements[" + std::to_string(j) + "]";
        if (m.rows() != dim || m.cols() != dim) throw DimensionError(where + ": dimension mismatch");
        if (!m.allFinite()) throw ValidationError(where + ": non-finite entries");
        if (!(hermiticity_deviation(m) <= tol)) throw ValidationError(where + ": not Hermitian");
        m = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
        const double smallest = solver.eigenvalues().minCoeff();
        if (!(smallest >= -tol)) {
            std::ostringstream os;
            os << where << ": not positive semidefinite (smallest eigenvalue " << smallest << ")";
            throw ValidationError(os.str());
        }
        total += m;
    }
    const double dev = (total - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (!(dev <= config().reconstruction_tol)) {
        std::ostringstream os;
        os << "Povm: elements sum to identity only within " << dev;
        throw ValidationError(os.str());
    }
}

Povm::Povm(const std::vector<HermitianOperator>& elements)
    : Povm([&] {
          std::vector<CMatrix> ms;
          for (const auto& e : elements) ms.push_back(e.matrix());
          return ms;
      }()) {}

SolutionFamily::SolutionFamily(std::vector<std::vector<std::uint64_t>> sets, int output_bits)
    : output_bits_(output_bits), sets_(std::move(sets)) {
    if (output_bits_ < 1 || output_bits_ > 62) throw ValidationError("SolutionFamily: output bits out of range");
    if (sets_.empty()) throw ValidationError("SolutionFamily: needs one set per POVM outcome");
    const std::uint64_t limit = std::uint64_t{1} << output_bits_;
    for (std::size_t j = 0; j < sets_.size(); ++j) {
        auto& s = sets_[j];
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
            throw ValidationError("SolutionFamily.sets[" + std::to_string(j) + "]: repeated string");
        }
        if (!s.empty() && s.back() >= limit) {
            throw ValidationError("SolutionFamily.sets[" + std::to_string(j) + "]: string " +
                                  std::to_string(s.back()) + " has more than " + std::to_string(output_bits_) +
                                  " bits");
        }
        if (s.size() != sets_.front().size()) {
            throw ValidationError("SolutionFamily: sets must all have the same size (deterministic MBQC)");
        }
    }
}

double mbqc_success_probability(const DensityOperator& sigma, const ResourcePartition& part, const Povm& povm,
                                const SolutionFamily& sols) {
    if (sigma.qubits() != part.total_qubits()) {
        throw DimensionError("mbqc_success_probability: state has " + std::to_string(sigma.qubits()) +
                             " qubits, partition expects " + std::to_string(part.total_qubits()));
    }
    if (povm.qubits() != part.control_count()) {
        throw DimensionError("mbqc_success_probability: POVM acts on " + std::to_string(povm.qubits()) +
                             " qubits, C has " + std::to_string(part.control_count()));
    }
    if (sols.size() != povm.size()) {
        throw DimensionError("mbqc_success_probability: " + std::to_string(sols.size()) + " solution sets for " +
                             std::to_string(povm.size()) + " POVM outcomes");
    }
    if (sols.output_bits() != part.output_count()) {
        throw DimensionError("mbqc_success_probability: solution strings do not match |O|");
    }

    // Reorder qubits as (C..., O...) so that M_j (x) P_z is a plain Kronecker product.
    std::vector<int> order = part.control_qubits();
    order.insert(order.end(), part.output_qubits().begin(), part.output_qubits().end());
    const CMatrix ordered = partial_trace(sigma, order).matrix();

    const Eigen::Index dim_o = dimension_for_qubits(part.output_count());
    const Eigen::Index dim_c = Eigen::Index{1} << part.control_count();
    Complex total = 0.0;
    for (std::size_t j = 0; j < povm.size(); ++j) {
        const CMatrix& m = povm.elements()[j];
        for (std::uint64_t z : sols.sets()[j]) {
            const auto zi = static_cast<Eigen::Index>(z);
            // Tr[(M (x) |z><z|) rho] = sum_{a,b} M(a,b) rho((b,z),(a,z))
            for (Eigen::Index a = 0; a < dim_c; ++a) {
                for (Eigen::Index b = 0; b < dim_c; ++b) {
                    total += m(a, b) * ordered(b * dim_o + zi, a * dim_o + zi);
                }
            }
        }
    }
    return total.real();
}

double success_upper_bound(double lambda1, const ResourcePartition& part, std::uint64_t solution_size) {
    if (solution_size > (std::uint64_t{1} << part.output_count())) {
        throw DomainError("success_upper_bound: |S| exceeds 2^n");
    }
    return lambda1 * static_cast<double>(solution_size) * std::ldexp(1.0, part.control_count());
}

double success_upper_bound(const DensityOperator& sigma, const ResourcePartition& part, std::uint64_t solution_size) {
    if (sigma.qubits() != part.total_qubits()) throw DimensionError("success_upper_bound: qubit count mismatch");
    return success_upper_bound(spectrum(sigma)(0), part, solution_size);
}

double solution_count_lower_bound(double lambda1, int total_qubits, int output_qubits) {
    if (!(lambda1 > 0.0) || !(lambda1 <= 1.0)) {
        std::ostringstream os;
        os << "solution_count_lower_bound: lambda1 must lie in (0, 1], got " << lambda1;
        throw DomainError(os.str());
    }
    if (output_qubits < 1 || output_qubits > total_qubits) {
        throw DomainError("solution_count_lower_bound: need 1 <= n <= N");
    }
    return std::ldexp(1.0, output_qubits - total_qubits - 1) / lambda1;
}

MbqcInstance mbqc_instance_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("instance: expected an object");
    for (const char* f : {"state", "partition", "povm", "solution_family"}) {
        if (!j.contains(f)) throw ValidationError(std::string("instance: missing field '") + f + "'");
    }
    DensityOperator state = density_from_json(j["state"], "instance.state");

    const auto& pj = j["partition"];
    if (!pj.is_object() || !pj.contains("total_qubits") || !pj["total_qubits"].is_number_integer() ||
        !pj.contains("output_qubits") || !pj["output_qubits"].is_array()) {
        throw ValidationError("instance.partition: expected {total_qubits, output_qubits[, control_qubits]}");
    }
    auto int_list = [](const json& arr, const std::string& where) {
        std::vector<int> out;
        for (std::size_t k = 0; k < arr.size(); ++k) {
            if (!arr[k].is_number_integer()) throw ValidationError(where + "[" + std::to_string(k) + "]: not an integer");
            out.push_back(arr[k].get<int>());
        }
        return out;
    };
    const int total = pj["total_qubits"].get<int>();
    auto output = int_list(pj["output_qubits"], "instance.partition.output_qubits");
    std::optional<ResourcePartition> part;
    if (pj.contains("control_qubits")) {
        if (!pj["control_qubits"].is_array()) throw ValidationError("instance.partition.control_qubits: expected array");
        part.emplace(total, output, int_list(pj["control_qubits"], "instance.partition.control_qubits"));
    } else {
        part.emplace(total, output);
    }

    if (!j["povm"].is_array()) throw ValidationError("instance.povm: expected an array of matrices");
    std::vector<CMatrix> elements;
    for (std::size_t k = 0; k < j["povm"].size(); ++k) {
        const auto& e = j["povm"][k];
        const std::string where = "instance.povm[" + std::to_string(k) + "]";
        if (part->control_count() == 0) {
            // Scalar element on an empty C: {"qubits": 0, "re": [x], "im": [y]}.
            if (!e.contains("re") || !e["re"].is_array() || e["re"].size() != 1) {
                throw ValidationError(where + ": expected a 1x1 element for an empty C");
            }
            double im = e.contains("im") && e["im"].is_array() && e["im"].size() == 1 ? e["im"][0].get<double>() : 0.0;
            elements.push_back(CMatrix::Constant(1, 1, Complex(e["re"][0].get<double>(), im)));
        } else {
            elements.push_back(matrix_from_json(e, where));
        }
    }
    Povm povm(std::move(elements));

    const auto& sj = j["solution_family"];
    if (!sj.is_array()) throw ValidationError("instance.solution_family: expected an array of arrays");
    std::vector<std::vector<std::uint64_t>> sets;
    for (std::size_t k = 0; k < sj.size(); ++k) {
        const std::string where = "instance.solution_family[" + std::to_string(k) + "]";
        if (!sj[k].is_array()) throw ValidationError(where + ": expected an array");
        std::vector<std::uint64_t> s;
        for (const auto& z : sj[k]) {
            if (!z.is_number_unsigned()) throw ValidationError(where + ": entries must be non-negative integers");
            s.push_back(z.get<std::uint64_t>());
        }
        sets.push_back(std::move(s));
    }
    SolutionFamily sols(std::move(sets), part->output_count());

    MbqcInstance inst{std::move(state), *part, std::move(povm), std::move(sols)};
    if (inst.state.qubits() != inst.partition.total_qubits()) {
        throw ValidationError("instance: state qubit count does not match partition.total_qubits");
    }
    if (inst.povm.qubits() != inst.partition.control_count()) {
        throw ValidationError("instance.povm: elements do not act on C");
    }
    if (inst.solutions.size() != inst.povm.size()) {
        throw ValidationError("instance.solution_family: one set per POVM element required");
    }
    return inst;
}

json to_json(const MbqcInstance& inst) {
    json povm = json::array();
    for (const auto& m : inst.povm.elements()) {
        if (m.rows() == 1) {
            povm.push_back({{"qubits", 0}, {"re", {m(0, 0).real()}}, {"im", {m(0, 0).imag()}}});
        } else {
            povm.push_back(matrix_to_json(m));
        }
    }
    return {{"state", to_json(inst.state)},
            {"partition",
             {{"total_qubits", inst.partition.total_qubits()},
              {"output_qubits", inst.partition.output_qubits()},
              {"control_qubits", inst.partition.control_qubits()}}},
            {"povm", std::move(povm)},
            {"solution_family", inst.solutions.sets()}};
}

}  // namespace mixedlab
