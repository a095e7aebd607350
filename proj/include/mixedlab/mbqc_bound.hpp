#pragma once

// General MBQC on a resource state: a POVM on the measured region C, then a
// computational-basis readout of the output region O.

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "mixedlab/state_core.hpp"

namespace mixedlab {

class ResourcePartition {
  public:
    /// C is the complement of `output_qubits`, in ascending order.
    ResourcePartition(int total_qubits, std::vector<int> output_qubits);
    ResourcePartition(int total_qubits, std::vector<int> output_qubits, std::vector<int> control_qubits);

    int total_qubits() const { return total_; }
    int output_count() const { return static_cast<int>(output_.size()); }
    int control_count() const { return static_cast<int>(control_.size()); }
    /// Readout order: output_qubits()[0] is the most significant bit of z.
    const std::vector<int>& output_qubits() const { return output_; }
    const std::vector<int>& control_qubits() const { return control_; }

  private:
    int total_;
    std::vector<int> output_;
    std::vector<int> control_;
};

/// Positive operators on C summing to the identity. With an empty C the only
/// POVM is the 1x1 identity.
class Povm {
  public:
    explicit Povm(std::vector<CMatrix> elements);
    explicit Povm(const std::vector<HermitianOperator>& elements);

    int qubits() const { return qubits_; }
    std::size_t size() const { return elements_.size(); }
    const std::vector<CMatrix>& elements() const { return elements_; }

  private:
    int qubits_;
    std::vector<CMatrix> elements_;
};

/// Accepted readout strings S_j per POVM outcome j, all of one size.
class SolutionFamily {
  public:
    SolutionFamily(std::vector<std::vector<std::uint64_t>> sets, int output_bits);

    int output_bits() const { return output_bits_; }
    std::size_t size() const { return sets_.size(); }
    std::size_t set_size() const { return sets_.empty() ? 0 : sets_.front().size(); }
    const std::vector<std::vector<std::uint64_t>>& sets() const { return sets_; }

  private:
    int output_bits_;
    std::vector<std::vector<std::uint64_t>> sets_;
};

/// sum_j sum_{z in S_j} Tr[(M_j (x) P_z) sigma].
double mbqc_success_probability(const DensityOperator& sigma, const ResourcePartition& part, const Povm& povm,
                                const SolutionFamily& sols);

/// lambda_1(sigma) |S| 2^{N-n}; may exceed 1.
double success_upper_bound(const DensityOperator& sigma, const ResourcePartition& part, std::uint64_t solution_size);
double success_upper_bound(double lambda1, const ResourcePartition& part, std::uint64_t solution_size);

/// 2^{n-N-1} / lambda_1: the smallest |S| compatible with success >= 1/2.
double solution_count_lower_bound(double lambda1, int total_qubits, int output_qubits);

/// Success threshold a solver must reach.
inline constexpr double kSuccessThreshold = 0.5;

struct MbqcInstance {
    DensityOperator state;
    ResourcePartition partition;
    Povm povm;
    SolutionFamily solutions;
};

/// {state, partition: {total_qubits, output_qubits, control_qubits?}, povm: [matrix...], solution_family: [[...]...]}
MbqcInstance mbqc_instance_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MbqcInstance& inst);

}  // namespace mixedlab
