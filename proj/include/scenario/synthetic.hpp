#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scenario/core.hpp"
#include "scenario/stationary.hpp"

namespace scenario {

// Smooth nonconvex-nonconcave test game
//   f(x, y) = ||x||^2/2 - ||y||^2/2 + amp * sum_d sin(freq x_d) sin(freq y_d)
// (sum over the first min(p, q) coordinates) on the boxes
// X_theta = [-theta, theta]^p, Y_theta = [-theta, theta]^q.
// With amp * freq^2 > 1 the diagonal of the Hessian changes sign in both
// blocks.
struct SyntheticInstance {
    std::size_t p = 2;
    std::size_t q = 2;
    double amp = 0.3;
    double freq = 5.0;
    ScenarioDistribution dist = ScenarioDistribution::uniform(0.5, 1.5);

    void validate() const;
};

double syn_payoff(const SyntheticInstance& inst, std::span<const double> x, std::span<const double> y);
Gradient syn_grad(const SyntheticInstance& inst, std::span<const double> x, std::span<const double> y);

bool syn_membership(const SyntheticInstance& inst, double theta, const EquilibriumPoint& pt);

/// P(theta < max(||x||_inf, ||y||_inf)).
double syn_exact_violation(const SyntheticInstance& inst, const EquilibriumPoint& pt);

class SyntheticGame final : public BoxGame {
public:
    explicit SyntheticGame(SyntheticInstance inst);

    const SyntheticInstance& instance() const noexcept { return inst_; }

    Dims dims() const override { return {inst_.p, inst_.q}; }
    double value(std::span<const double> x, std::span<const double> y) const override;
    Gradient gradient(std::span<const double> x, std::span<const double> y) const override;
    /// Both boxes have half-width min_i theta_i.
    std::pair<BoxRegion, BoxRegion> feasible_boxes(const MultiSample& samples) const override;

private:
    SyntheticInstance inst_;
};

inline constexpr double kSyntheticPointTol = 1e-9;

/// Scenario problem whose solver map is min_residual_map with fixed
/// parameters and seed.
class SyntheticProblem final : public ScenarioProblem {
public:
    SyntheticProblem(SyntheticInstance inst, GDAParams params, std::uint64_t solver_seed);

    const SyntheticGame& game() const noexcept { return game_; }
    const GDAParams& params() const noexcept { return params_; }
    std::uint64_t solver_seed() const noexcept { return seed_; }

    /// Full solver output including residual and start bookkeeping.
    StationaryResult solve_stationary(const MultiSample& samples) const;

    std::string_view name() const override { return "synthetic"; }
    Dims dims() const override { return game_.dims(); }
    const ScenarioDistribution& distribution() const override { return game_.instance().dist; }
    bool membership(double theta, const EquilibriumPoint& point) const override;
    EquilibriumPoint solve(const MultiSample& samples) const override;
    bool points_equal(const EquilibriumPoint& a, const EquilibriumPoint& b) const override;
    double payoff(std::span<const double> x, std::span<const double> y) const override;
    std::optional<double> exact_violation(const EquilibriumPoint& point) const override;

private:
    SyntheticGame game_;
    GDAParams params_;
    std::uint64_t seed_;
};

}  // namespace scenario
