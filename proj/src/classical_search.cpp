#include "mixedlab/classical_search.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace mixedlab {

using nlohmann::json;

namespace {

void check_failure_target(double p_f) {
    if (!(p_f > 0.0 && p_f < 1.0)) {
        std::ostringstream os;
        os << "failure target must lie in (0, 1), got " << p_f;
        throw DomainError(os.str());
    }
}

void check_bits(int bits, const char* what) {
    if (bits < 1 || bits > kMaxSearchBits) {
        throw DomainError(std::string(what) + ": bit length must lie in [1, " + std::to_string(kMaxSearchBits) +
                          "], got " + std::to_string(bits));
    }
}

}  // namespace

void SolverConfig::validate() const {
    check_failure_target(failure_target);
    if (!(delta >= 0.0) || !std::isfinite(delta)) throw DomainError("SolverConfig: delta must be finite and >= 0");
    if (explicit_repetitions && *explicit_repetitions < 1) throw DomainError("SolverConfig: repetitions must be >= 1");
}

std::uint64_t SolverConfig::repetitions() const {
    validate();
    return explicit_repetitions ? *explicit_repetitions : repetitions_for_failure(delta, failure_target);
}

std::uint64_t repetitions_for_failure(double delta, double failure_target) {
    check_failure_target(failure_target);
    if (!(delta >= 0.0) || !std::isfinite(delta)) throw DomainError("repetitions_for_failure: delta must be >= 0");
    const double t = std::ceil(std::exp2(delta + 1.0) * -std::log(failure_target));
    if (!(t < 1.8e19)) throw DomainError("repetitions_for_failure: repetition count overflows");
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(t));
}

SearchOutcome random_search(const VerifierOracle& oracle, std::uint64_t t, std::uint64_t seed, bool trace) {
    check_bits(oracle.bit_length, "random_search");
    if (t < 1) throw DomainError("random_search: t must be >= 1");
    if (!oracle.verify) throw ValidationError("random_search: oracle has no verify predicate");
    Rng rng(seed);
    const int shift = 64 - oracle.bit_length;
    SearchOutcome out;
    for (std::uint64_t attempt = 0; attempt < t; ++attempt) {
        if (oracle.call_budget && out.attempts_used >= *oracle.call_budget) {
            throw BudgetError("random_search: verifier call budget of " + std::to_string(*oracle.call_budget) +
                              " exhausted before " + std::to_string(t) + " attempts");
        }
        const BitString candidate = rng() >> shift;
        const bool accepted = oracle.verify(candidate);
        ++out.attempts_used;
        if (trace) out.attempt_log.emplace_back(candidate, accepted);
        if (accepted) {
            out.found = candidate;
            break;
        }
    }
    return out;
}

SearchOutcome solve(const VerifierOracle& oracle, const SolverConfig& cfg, bool trace) {
    return random_search(oracle, cfg.repetitions(), cfg.rng_seed, trace);
}

FailureBounds failure_probability_bounds(std::uint64_t solution_count, int bits, std::uint64_t t, double delta) {
    check_bits(bits, "failure_probability_bounds");
    if (t < 1) throw DomainError("failure_probability_bounds: t must be >= 1");
    if (!(delta >= 0.0)) throw DomainError("failure_probability_bounds: delta must be >= 0");
    const double space = std::ldexp(1.0, bits);
    const double fraction = static_cast<double>(solution_count) / space;
    if (fraction > 1.0) throw DomainError("failure_probability_bounds: more solutions than strings");

    FailureBounds b;
    b.exact = std::pow(1.0 - fraction, static_cast<double>(t));
    b.exp_bound = std::exp(-static_cast<double>(t) * std::exp2(-delta - 1.0));
    if (fraction >= std::exp2(-delta - 1.0) && b.exact > b.exp_bound) {
        std::ostringstream os;
        os << "failure_probability_bounds: exact miss probability " << b.exact << " exceeds bound " << b.exp_bound;
        throw InternalConsistencyError(os.str());
    }
    return b;
}

double dqc1k_failure_bound(std::uint64_t t) {
    if (t < 1) throw DomainError("dqc1k_failure_bound: t must be >= 1");
    return std::pow(0.75, static_cast<double>(t));
}

PlantedProblem::PlantedProblem(int bits, std::vector<BitString> sols) : bit_length(bits), solutions(std::move(sols)) {
    check_bits(bit_length, "PlantedProblem");
    std::sort(solutions.begin(), solutions.end());
    if (std::adjacent_find(solutions.begin(), solutions.end()) != solutions.end()) {
        throw ValidationError("PlantedProblem: repeated solution");
    }
    if (!solutions.empty() && solutions.back() >> bit_length) {
        throw ValidationError("PlantedProblem: solution " + std::to_string(solutions.back()) + " exceeds " +
                              std::to_string(bit_length) + " bits");
    }
}

PlantedProblem PlantedProblem::random(int bits, std::uint64_t count, Rng& rng) {
    check_bits(bits, "PlantedProblem::random");
    const std::uint64_t space = std::uint64_t{1} << bits;
    if (count > space) throw DomainError("PlantedProblem::random: more solutions than strings");
    std::vector<BitString> chosen;
    if (count * 2 > space) {
        // Dense: shuffle the whole space.
        chosen.resize(space);
        for (std::uint64_t s = 0; s < space; ++s) chosen[s] = s;
        std::shuffle(chosen.begin(), chosen.end(), rng);
        chosen.resize(count);
    } else {
        std::unordered_set<BitString> seen;
        std::uniform_int_distribution<BitString> pick(0, space - 1);
        while (chosen.size() < count) {
            BitString s = pick(rng);
            if (seen.insert(s).second) chosen.push_back(s);
        }
    }
    return PlantedProblem(bits, std::move(chosen));
}

bool PlantedProblem::accepts(BitString s) const { return std::binary_search(solutions.begin(), solutions.end(), s); }

VerifierOracle PlantedProblem::oracle() const {
    VerifierOracle o;
    o.bit_length = bit_length;
    o.verify = [sols = solutions](BitString s) { return std::binary_search(sols.begin(), sols.end(), s); };
    return o;
}

PlantedProblem planted_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
        throw ValidationError("planted.n: expected an integer");
    }
    if (!j.contains("solutions") || !j["solutions"].is_array()) {
        throw ValidationError("planted.solutions: expected an array");
    }
    std::vector<BitString> sols;
    for (std::size_t k = 0; k < j["solutions"].size(); ++k) {
        if (!j["solutions"][k].is_number_unsigned()) {
            throw ValidationError("planted.solutions[" + std::to_string(k) + "]: expected a non-negative integer");
        }
        sols.push_back(j["solutions"][k].get<BitString>());
    }
    try {
        return PlantedProblem(j["n"].get<int>(), std::move(sols));
    } catch (const DomainError& e) {
        throw ValidationError(std::string("planted: ") + e.what());
    }
}

json to_json(const PlantedProblem& p) { return {{"n", p.bit_length}, {"solutions", p.solutions}}; }

}  // namespace mixedlab
