#pragma once

// Uniform random guessing against a verifier, with the repetition count and
// failure bounds that make it competitive with a highly mixed quantum solver.

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mixedlab/random.hpp"

namespace mixedlab {

/// An n-bit string, most significant bit first.
using BitString = std::uint64_t;

inline constexpr int kMaxSearchBits = 62;

struct VerifierOracle {
    int bit_length = 0;
    std::function<bool(BitString)> verify;
    std::optional<std::uint64_t> call_budget;
    /// Whether `verify` may be called from several threads at once.
    bool concurrent_safe = true;
};

struct SolverConfig {
    double delta = 0.0;            // min-entropy deficit, bits
    double failure_target = 0.05;  // p_f
    std::optional<std::uint64_t> explicit_repetitions;
    std::uint64_t rng_seed = 0;

    void validate() const;
    /// explicit_repetitions if set, else repetitions_for_failure(delta, failure_target).
    std::uint64_t repetitions() const;
};

struct SearchOutcome {
    std::optional<BitString> found;
    std::uint64_t attempts_used = 0;
    std::vector<std::pair<BitString, bool>> attempt_log;  // filled only when tracing

    bool operator==(const SearchOutcome&) const = default;
};

/// ceil(2^{delta+1} ln(1/p_f)).
std::uint64_t repetitions_for_failure(double delta, double failure_target);

/// Draws up to t independent uniform strings and stops at the first accepted
/// one. Throws BudgetError if the oracle's call budget runs out first.
SearchOutcome random_search(const VerifierOracle& oracle, std::uint64_t t, std::uint64_t seed, bool trace = false);
SearchOutcome solve(const VerifierOracle& oracle, const SolverConfig& cfg, bool trace = false);

struct FailureBounds {
    double exact = 0.0;      // (1 - |S|/2^n)^t
    double exp_bound = 0.0;  // exp(-t 2^{-delta-1})
};

/// Throws InternalConsistencyError if exact > exp_bound while |S|/2^n >= 2^{-delta-1}.
FailureBounds failure_probability_bounds(std::uint64_t solution_count, int bits, std::uint64_t t, double delta);

/// (3/4)^t.
double dqc1k_failure_bound(std::uint64_t t);

/// A verifier that accepts a fixed sorted set of strings.
struct PlantedProblem {
    int bit_length = 0;
    std::vector<BitString> solutions;  // sorted, unique

    PlantedProblem(int bits, std::vector<BitString> solutions);
    /// `count` distinct solutions drawn uniformly.
    static PlantedProblem random(int bits, std::uint64_t count, Rng& rng);

    bool accepts(BitString s) const;
    VerifierOracle oracle() const;
};

/// {n, solutions: [integers]}
PlantedProblem planted_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PlantedProblem& p);

}  // namespace mixedlab
