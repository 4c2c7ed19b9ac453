#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "scenario/core.hpp"

namespace scenario {

struct ConditionTally {
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
    std::vector<std::uint64_t> failing_seeds;
};

/// Empirical check of the three consistency conditions of a solver map:
///   permutation   - permuting the multisample leaves the output unchanged
///   feasible      - appending scenarios the output already satisfies
///                   leaves the output unchanged
///   infeasible    - appending a scenario the output violates changes it
struct ConsistencyReport {
    std::size_t trials = 0;
    ConditionTally permutation;
    ConditionTally feasible_augmentation;
    ConditionTally infeasible_augmentation;

    bool ok() const noexcept {
        return permutation.failed == 0 && feasible_augmentation.failed == 0 && infeasible_augmentation.failed == 0;
    }
    nlohmann::json to_json() const;
};

struct ConsistencyOptions {
    std::size_t max_base_m = 20;   // base multisample size drawn from 1..max_base_m
    std::size_t max_extra = 5;     // feasible augmentation size drawn from 1..max_extra
    std::size_t max_attempts = 100000;
};

/// Runs `trials` randomized trials; trial i uses seed derive_seed(seed, {i}),
/// which is what failing_seeds records.
ConsistencyReport check_consistency(const ScenarioProblem& problem, std::size_t trials, std::uint64_t seed,
                                    const ConsistencyOptions& options = {});

}  // namespace scenario
