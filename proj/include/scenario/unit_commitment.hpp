#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "scenario/core.hpp"

namespace scenario {

/// Unit-commitment game: the min-player picks binary commitments u and a
/// dispatch matrix V, the max-player picks a load vector y in a theta-scaled
/// box. Payoff sum_i C_i u_i + sum_ij V_ij y_j.
///
/// Per-scenario feasible sets:
///   X_theta: u in {0,1}^I, sum_i R_i u_i >= demand_scale * theta,
///            0 <= V_ij <= u_i, sum_ij V_ij = total_dispatch
///   Y_theta: ||y||_inf <= theta
struct UnitCommitmentInstance {
    std::size_t n_gen = 5;
    std::size_t n_nodes = 5;
    std::vector<double> turn_on_cost{1.0, 1.1, 0.9, 1.05, 1.2};
    std::vector<double> capacity_coeff{1.0, 1.2, 0.9, 1.1, 1.3};
    double demand_scale = 3.0;
    double total_dispatch = 5.0;
    ScenarioDistribution dist = ScenarioDistribution::uniform(0.5, 1.5);

    /// Throws InvalidArgument if sizes disagree, a coefficient is not strictly
    /// positive, or some theta in the support admits no commitment.
    void validate() const;
};

/// Structured view of a unit-commitment point. In EquilibriumPoint form the
/// min-player vector is x = (u_1..u_I, V_11..V_1J, V_21..V_IJ), i.e. u
/// followed by V in row-major order, and y is the load vector.
struct UCPoint {
    std::vector<int> u;
    std::vector<double> V;  // row-major, n_gen x n_nodes
    std::vector<double> y;

    EquilibriumPoint to_point() const;
    static UCPoint from_point(const UnitCommitmentInstance& inst, const EquilibriumPoint& point);
};

inline constexpr double kDispatchTol = 1e-9;
// Slack on sum_i R_i u_i >= demand_scale * theta so that sums such as
// 1.0 + 0.9 + 1.1 compare equal to 3.0 regardless of rounding.
inline constexpr double kCommitmentTol = 1e-12;
inline constexpr double kCostTieTol = 1e-12;
inline constexpr double kUCPointTol = 1e-9;

/// Exact tie-broken global minimax point for the multisample.
///
/// With theta_min / theta_max the extreme samples, the intersected sets are
/// Y^M = {||y||_inf <= theta_min} and the commitment constraint at
/// theta_max. Since V >= 0 the inner maximum is at y = theta_min * 1 and the
/// envelope is sum_i C_i u_i + total_dispatch * theta_min, independent of V.
/// So u* is the cheapest feasible commitment (enumerated over all 2^I
/// vectors; cost ties go to the lexicographically smallest u with 0 < 1),
/// V* spreads total_dispatch uniformly over the active rows and
/// y* = theta_min * 1.
UCPoint uc_solve(const UnitCommitmentInstance& inst, const MultiSample& samples);

bool uc_membership(const UnitCommitmentInstance& inst, double theta, const UCPoint& pt);

/// P(theta < ||y||_inf) + P(theta > sum_i R_i u_i / demand_scale).
double uc_exact_violation(const UnitCommitmentInstance& inst, const UCPoint& pt);

double uc_payoff(const UnitCommitmentInstance& inst, const UCPoint& pt);

double commitment_capacity(const UnitCommitmentInstance& inst, const std::vector<int>& u);
double commitment_cost(const UnitCommitmentInstance& inst, const std::vector<int>& u);

class UnitCommitmentProblem final : public ScenarioProblem {
public:
    explicit UnitCommitmentProblem(UnitCommitmentInstance inst = {});

    const UnitCommitmentInstance& instance() const noexcept { return inst_; }

    std::string_view name() const override { return "unit_commitment"; }
    Dims dims() const override;
    const ScenarioDistribution& distribution() const override { return inst_.dist; }
    bool membership(double theta, const EquilibriumPoint& point) const override;
    EquilibriumPoint solve(const MultiSample& samples) const override;
    bool points_equal(const EquilibriumPoint& a, const EquilibriumPoint& b) const override;
    double payoff(std::span<const double> x, std::span<const double> y) const override;
    std::optional<double> exact_violation(const EquilibriumPoint& point) const override;
    nlohmann::json point_to_json(const EquilibriumPoint& point) const override;

private:
    UnitCommitmentInstance inst_;
};

}  // namespace scenario
