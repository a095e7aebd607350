#include <cmath>

#include <gtest/gtest.h>

#include "mixedlab/classical_search.hpp"

using namespace mixedlab;

namespace {

VerifierOracle constant_oracle(int bits, bool answer) {
    VerifierOracle o;
    o.bit_length = bits;
    o.verify = [answer](BitString) { return answer; };
    return o;
}

}  // namespace

TEST(Repetitions, Examples) {
    EXPECT_EQ(repetitions_for_failure(0.0, std::exp(-1.0)), 2u);
    EXPECT_EQ(repetitions_for_failure(3.0, 0.01), 74u);
    EXPECT_EQ(repetitions_for_failure(0.0, 0.5), 2u);
    EXPECT_THROW(repetitions_for_failure(0.0, 0.0), DomainError);
    EXPECT_THROW(repetitions_for_failure(0.0, 1.0), DomainError);
    EXPECT_THROW(repetitions_for_failure(-1.0, 0.5), DomainError);
}

TEST(Repetitions, CeilingKeepsFailureBelowTarget) {
    for (double delta : {0.0, 0.5, 1.0, 2.0, 3.5, 6.0}) {
        for (double pf : {0.3, 0.05, 0.01, 1e-6}) {
            const auto t = repetitions_for_failure(delta, pf);
            EXPECT_LT(std::exp(-static_cast<double>(t) * std::exp2(-delta - 1.0)), pf + 1e-15);
        }
    }
}

TEST(RandomSearch, AcceptAllFindsOnFirstAttempt) {
    auto out = random_search(constant_oracle(8, true), 50, 1);
    ASSERT_TRUE(out.found.has_value());
    EXPECT_EQ(out.attempts_used, 1u);
}

TEST(RandomSearch, AcceptNothingUsesEveryAttempt) {
    auto out = random_search(constant_oracle(8, false), 10, 1, true);
    EXPECT_FALSE(out.found.has_value());
    EXPECT_EQ(out.attempts_used, 10u);
    EXPECT_EQ(out.attempt_log.size(), 10u);
    for (auto [s, verdict] : out.attempt_log) {
        EXPECT_LT(s, 256u);
        EXPECT_FALSE(verdict);
    }
}

TEST(RandomSearch, BudgetErrorIsDistinctFromNotFound) {
    auto o = constant_oracle(8, false);
    o.call_budget = 5;
    EXPECT_THROW(random_search(o, 10, 3), BudgetError);
    EXPECT_NO_THROW(random_search(o, 5, 3));
}

TEST(RandomSearch, DeterministicForFixedSeed) {
    PlantedProblem p(10, {3, 77, 500, 1000});
    auto o = p.oracle();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        EXPECT_EQ(random_search(o, 200, seed, true), random_search(o, 200, seed, true));
    }
}

TEST(RandomSearch, FoundStringsVerify) {
    Rng rng(5);
    auto p = PlantedProblem::random(12, 40, rng);
    auto o = p.oracle();
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto out = random_search(o, 500, seed);
        if (out.found) {
            EXPECT_TRUE(p.accepts(*out.found));
            EXPECT_TRUE(o.verify(*out.found));
            EXPECT_TRUE(o.verify(*out.found));  // deterministic on repeat calls
        }
        EXPECT_LE(out.attempts_used, 500u);
    }
}

TEST(RandomSearch, HalfDensityOracleAlmostNeverFails) {
    // Accept strings with a leading 1: exactly half of {0,1}^8. Exact failure
    // probability for t = 30 is 2^-30, so over 2000 seeds the expected count
    // of failures is below 2e-6; a single failure would already sit far outside
    // any binomial confidence band.
    VerifierOracle o;
    o.bit_length = 8;
    o.verify = [](BitString s) { return (s >> 7) & 1u; };
    int failures = 0;
    for (std::uint64_t seed = 0; seed < 2000; ++seed) failures += random_search(o, 30, seed).found ? 0 : 1;
    EXPECT_EQ(failures, 0);
}

TEST(RandomSearch, DrawsAreUniform) {
    // Chi-square over the 16 values of a 4-bit search; 15 dof, 99.9% quantile ~ 37.7.
    VerifierOracle o = constant_oracle(4, false);
    std::vector<int> counts(16, 0);
    auto out = random_search(o, 16000, 42, true);
    for (auto [s, v] : out.attempt_log) ++counts[s];
    double chi2 = 0.0;
    for (int c : counts) chi2 += (c - 1000.0) * (c - 1000.0) / 1000.0;
    EXPECT_LT(chi2, 37.7);
}

TEST(FailureBounds, Examples) {
    EXPECT_EQ(failure_probability_bounds(256, 8, 5, 0.0).exact, 0.0);
    EXPECT_DOUBLE_EQ(failure_probability_bounds(128, 8, 3, 0.0).exact, 0.125);
    EXPECT_NEAR(failure_probability_bounds(64, 8, 8, 2.0).exp_bound, 0.36787944117144233, 1e-15);
    EXPECT_THROW(failure_probability_bounds(300, 8, 1, 0.0), DomainError);
}

TEST(FailureBounds, ExactBelowExponentialBound) {
    for (int n : {4, 8, 12}) {
        for (double delta : {0.0, 1.0, 2.0, 3.0}) {
            const auto minimum = static_cast<std::uint64_t>(std::ceil(std::ldexp(1.0, n) * std::exp2(-delta - 1.0)));
            for (std::uint64_t count = minimum; count <= (std::uint64_t{1} << n); count += 1 + count / 3) {
                for (std::uint64_t t : {1u, 2u, 7u, 40u, 300u}) {
                    auto b = failure_probability_bounds(count, n, t, delta);
                    EXPECT_LE(b.exact, b.exp_bound);
                }
            }
        }
    }
}

TEST(Dqc1kFailure, Examples) {
    EXPECT_EQ(dqc1k_failure_bound(1), 0.75);
    EXPECT_DOUBLE_EQ(dqc1k_failure_bound(4), 0.31640625);
    std::uint64_t t = 1;
    while (dqc1k_failure_bound(t) >= 0.01) ++t;
    EXPECT_EQ(t, 17u);
}

TEST(SolverConfig, UsesOverrideOrFormula) {
    SolverConfig cfg;
    cfg.delta = 3.0;
    cfg.failure_target = 0.01;
    EXPECT_EQ(cfg.repetitions(), 74u);
    cfg.explicit_repetitions = 9;
    EXPECT_EQ(cfg.repetitions(), 9u);
    cfg.failure_target = 2.0;
    EXPECT_THROW(cfg.validate(), DomainError);
}

TEST(PlantedProblem, Validation) {
    EXPECT_THROW(PlantedProblem(3, {8}), ValidationError);
    EXPECT_THROW(PlantedProblem(3, {1, 1}), ValidationError);
    Rng rng(1);
    auto dense = PlantedProblem::random(4, 12, rng);
    EXPECT_EQ(dense.solutions.size(), 12u);
    auto j = to_json(dense);
    auto back = planted_from_json(j);
    EXPECT_EQ(back.solutions, dense.solutions);
    EXPECT_THROW(planted_from_json(nlohmann::json::parse(R"({"n": 4, "solutions": [-1]})")), ValidationError);
}
