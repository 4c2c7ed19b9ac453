#include "scenario/consistency.hpp"

#include <optional>
#include <utility>

namespace scenario {

namespace {

std::size_t draw_index(SplitMix64& rng, std::size_t n) {
    // n is tiny here; the modulo bias is irrelevant for test generation.
    return static_cast<std::size_t>(rng.next() % n);
}

std::vector<double> permuted(std::span<const double> v, SplitMix64& rng) {
    std::vector<double> out(v.begin(), v.end());
    for (std::size_t i = out.size(); i > 1; --i) {
        std::swap(out[i - 1], out[draw_index(rng, i)]);
    }
    return out;
}

// Draws from the problem distribution until `accept` holds; nullopt after
// max_attempts rejections.
template <class Pred>
std::optional<double> rejection_draw(const ScenarioDistribution& dist, SplitMix64& rng, std::size_t max_attempts,
                                     std::size_t& attempts, Pred accept) {
    while (attempts < max_attempts) {
        ++attempts;
        const double theta = dist.draw(rng);
        if (accept(theta)) {
            return theta;
        }
    }
    return std::nullopt;
}

nlohmann::json tally_json(const ConditionTally& t) {
    return nlohmann::json{
        {"passed", t.passed}, {"failed", t.failed}, {"skipped", t.skipped}, {"failing_seeds", t.failing_seeds}};
}

}  // namespace

nlohmann::json ConsistencyReport::to_json() const {
    return nlohmann::json{{"trials", trials},
                          {"ok", ok()},
                          {"permutation", tally_json(permutation)},
                          {"feasible_augmentation", tally_json(feasible_augmentation)},
                          {"infeasible_augmentation", tally_json(infeasible_augmentation)}};
}

ConsistencyReport check_consistency(const ScenarioProblem& problem, std::size_t trials, std::uint64_t seed,
                                    const ConsistencyOptions& options) {
    if (trials < 1) {
        throw InvalidArgument("check_consistency: trials must be at least 1");
    }
    if (options.max_base_m < 1 || options.max_extra < 1) {
        throw InvalidArgument("check_consistency: sizes must be at least 1");
    }
    const ScenarioDistribution& dist = problem.distribution();
    ConsistencyReport report;
    report.trials = trials;

    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::uint64_t trial_seed = derive_seed(seed, {static_cast<std::uint64_t>(trial)});
        SplitMix64 rng(trial_seed);

        const std::size_t m = 1 + draw_index(rng, options.max_base_m);
        std::vector<double> thetas(m);
        for (double& t : thetas) {
            t = dist.draw(rng);
        }
        const MultiSample base(thetas);
        const EquilibriumPoint z = problem.solve(base);

        // (1) permutation invariance, exact comparison
        const MultiSample shuffled(permuted(base.thetas(), rng));
        if (problem.solve(shuffled) == z) {
            ++report.permutation.passed;
        } else {
            ++report.permutation.failed;
            report.permutation.failing_seeds.push_back(trial_seed);
        }

        // (2) appending scenarios that z satisfies keeps z
        const std::size_t n_extra = 1 + draw_index(rng, options.max_extra);
        std::vector<double> extra;
        std::size_t attempts = 0;
        bool skipped = false;
        for (std::size_t i = 0; i < n_extra; ++i) {
            auto theta = rejection_draw(dist, rng, options.max_attempts, attempts,
                                        [&](double t) { return problem.membership(t, z); });
            if (!theta) {
                skipped = true;
                break;
            }
            extra.push_back(*theta);
        }
        if (skipped) {
            ++report.feasible_augmentation.skipped;
        } else if (problem.points_equal(problem.solve(base.extended(extra)), z)) {
            ++report.feasible_augmentation.passed;
        } else {
            ++report.feasible_augmentation.failed;
            report.feasible_augmentation.failing_seeds.push_back(trial_seed);
        }

        // (3) appending one scenario that z violates changes the output
        attempts = 0;
        auto excluding = rejection_draw(dist, rng, options.max_attempts, attempts,
                                        [&](double t) { return !problem.membership(t, z); });
        if (!excluding) {
            ++report.infeasible_augmentation.skipped;
        } else {
            const double one[] = {*excluding};
            if (!problem.points_equal(problem.solve(base.extended(one)), z)) {
                ++report.infeasible_augmentation.passed;
            } else {
                ++report.infeasible_augmentation.failed;
                report.infeasible_augmentation.failing_seeds.push_back(trial_seed);
            }
        }
    }
    return report;
}

}  // namespace scenario
