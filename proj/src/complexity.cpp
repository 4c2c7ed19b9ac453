#include "scenario/complexity.hpp"

#include <algorithm>
#include <exception>

namespace scenario {

namespace {

EquilibriumPoint solve_on(const ScenarioProblem& problem, const MultiSample& samples,
                          const std::vector<std::size_t>& indices) {
    try {
        return problem.solve(samples.subset(indices));
    } catch (const SolverFailure&) {
        throw;
    } catch (const std::exception& e) {
        throw SolverFailure(std::string("solver failed on sublist: ") + e.what(), indices);
    }
}

}  // namespace

ComplexityResult greedy_support_sublist(const ScenarioProblem& problem, const MultiSample& samples) {
    std::vector<std::size_t> active(samples.size());
    for (std::size_t i = 0; i < active.size(); ++i) {
        active[i] = i;
    }

    ComplexityResult result;
    result.reference_point = solve_on(problem, samples, active);

    std::vector<std::size_t> candidate;
    candidate.reserve(active.size());
    for (std::size_t i = 0; i < samples.size() && active.size() > 1; ++i) {
        candidate.clear();
        std::copy_if(active.begin(), active.end(), std::back_inserter(candidate),
                     [i](std::size_t j) { return j != i; });
        const EquilibriumPoint z = solve_on(problem, samples, candidate);
        if (problem.points_equal(z, result.reference_point)) {
            active.swap(candidate);
        }
    }

    result.s_star = active.size();
    result.kept_indices = std::move(active);
    return result;
}

}  // namespace scenario
