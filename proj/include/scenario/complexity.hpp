#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "scenario/core.hpp"

namespace scenario {

/// Support sublist found by greedy removal. kept_indices refer to the
/// original multisample and are sorted ascending.
struct ComplexityResult {
    std::vector<std::size_t> kept_indices;
    std::size_t s_star = 0;
    EquilibriumPoint reference_point;
};

/// A solve on a candidate sublist threw. Carries the sublist that failed.
class SolverFailure : public std::runtime_error {
public:
    SolverFailure(const std::string& what, std::vector<std::size_t> subset)
        : std::runtime_error(what), subset_(std::move(subset)) {}

    const std::vector<std::size_t>& subset() const noexcept { return subset_; }

private:
    std::vector<std::size_t> subset_;
};

/// Walks the scenarios in ascending index order and drops each one whose
/// removal leaves the full-sample solution unchanged. The last remaining
/// scenario is never dropped.
ComplexityResult greedy_support_sublist(const ScenarioProblem& problem, const MultiSample& samples);

}  // namespace scenario
