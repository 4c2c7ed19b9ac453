#include "scenario/unit_commitment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace scenario {

namespace {

// Membership on the flat layout; shared by the UCPoint and EquilibriumPoint
// entry points so both agree bit for bit.
bool member_flat(const UnitCommitmentInstance& inst, double theta, std::span<const double> u,
                 std::span<const double> v, std::span<const double> y) {
    const std::size_t I = inst.n_gen;
    const std::size_t J = inst.n_nodes;
    double capacity = 0.0;
    for (std::size_t i = 0; i < I; ++i) {
        if (u[i] != 0.0 && u[i] != 1.0) {
            return false;
        }
        capacity += inst.capacity_coeff[i] * u[i];
    }
    if (capacity < inst.demand_scale * theta - kCommitmentTol) {
        return false;
    }
    if (sup_norm(y) > theta) {
        return false;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < I; ++i) {
        for (std::size_t j = 0; j < J; ++j) {
            const double vij = v[i * J + j];
            if (!(vij >= 0.0 && vij <= u[i])) {
                return false;
            }
            total += vij;
        }
    }
    return std::abs(total - inst.total_dispatch) <= kDispatchTol;
}

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

void UnitCommitmentInstance::validate() const {
    if (n_gen == 0 || n_nodes == 0) {
        throw InvalidArgument("unit commitment needs at least one generator and one node");
    }
    if (n_gen > 20) {
        throw InvalidArgument("unit commitment enumeration supports at most 20 generators");
    }
    if (turn_on_cost.size() != n_gen || capacity_coeff.size() != n_gen) {
        throw InvalidArgument("cost and capacity vectors must have n_gen entries");
    }
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!std::all_of(turn_on_cost.begin(), turn_on_cost.end(), positive) ||
        !std::all_of(capacity_coeff.begin(), capacity_coeff.end(), positive)) {
        throw InvalidArgument("cost and capacity coefficients must be strictly positive");
    }
    if (!positive(demand_scale) || !positive(total_dispatch)) {
        throw InvalidArgument("demand_scale and total_dispatch must be strictly positive");
    }
    const double full = std::accumulate(capacity_coeff.begin(), capacity_coeff.end(), 0.0);
    if (demand_scale * dist.hi() > full + kCommitmentTol) {
        throw InvalidArgument("instance is infeasible at the top of the support");
    }
}

EquilibriumPoint UCPoint::to_point() const {
    EquilibriumPoint p;
    p.x.reserve(u.size() + V.size());
    for (int ui : u) {
        p.x.push_back(static_cast<double>(ui));
    }
    p.x.insert(p.x.end(), V.begin(), V.end());
    p.y = y;
    return p;
}

UCPoint UCPoint::from_point(const UnitCommitmentInstance& inst, const EquilibriumPoint& point) {
    const std::size_t I = inst.n_gen;
    const std::size_t J = inst.n_nodes;
    if (point.x.size() != I + I * J || point.y.size() != J) {
        throw InvalidArgument("point does not match the unit-commitment layout");
    }
    UCPoint pt;
    pt.u.reserve(I);
    for (std::size_t i = 0; i < I; ++i) {
        const double ui = point.x[i];
        if (ui != 0.0 && ui != 1.0) {
            throw InvalidArgument("commitment entries must be 0 or 1");
        }
        pt.u.push_back(static_cast<int>(ui));
    }
    pt.V.assign(point.x.begin() + static_cast<std::ptrdiff_t>(I), point.x.end());
    pt.y = point.y;
    return pt;
}

double commitment_capacity(const UnitCommitmentInstance& inst, const std::vector<int>& u) {
    double s = 0.0;
    for (std::size_t i = 0; i < inst.n_gen; ++i) {
        s += inst.capacity_coeff[i] * u[i];
    }
    return s;
}

double commitment_cost(const UnitCommitmentInstance& inst, const std::vector<int>& u) {
    double s = 0.0;
    for (std::size_t i = 0; i < inst.n_gen; ++i) {
        s += inst.turn_on_cost[i] * u[i];
    }
    return s;
}

UCPoint uc_solve(const UnitCommitmentInstance& inst, const MultiSample& samples) {
    for (double theta : samples.thetas()) {
        if (!inst.dist.in_support(theta)) {
            throw InvalidArgument("scenario " + std::to_string(theta) + " lies outside the support");
        }
    }
    const double theta_min = samples.min();
    const double required = inst.demand_scale * samples.max();
    const std::size_t I = inst.n_gen;
    const std::size_t J = inst.n_nodes;

    std::vector<int> best;
    double best_cost = 0.0;
    std::vector<int> u(I);
    for (std::uint32_t mask = 0; mask < (1u << I); ++mask) {
        // bit (I-1-i) holds u_i so the mask order is the lexicographic order
        for (std::size_t i = 0; i < I; ++i) {
            u[i] = static_cast<int>((mask >> (I - 1 - i)) & 1u);
        }
        if (commitment_capacity(inst, u) < required - kCommitmentTol) {
            continue;
        }
        const double cost = commitment_cost(inst, u);
        if (best.empty() || cost < best_cost - kCostTieTol ||
            (std::abs(cost - best_cost) <= kCostTieTol && lex_less(u, best))) {
            best = u;
            best_cost = cost;
        }
    }
    if (best.empty()) {
        throw Infeasible("no commitment covers demand " + std::to_string(required));
    }

    UCPoint pt;
    pt.u = best;
    const int active = std::accumulate(best.begin(), best.end(), 0);
    const double share = inst.total_dispatch / (static_cast<double>(J) * active);
    pt.V.assign(I * J, 0.0);
    for (std::size_t i = 0; i < I; ++i) {
        if (best[i] == 1) {
            std::fill_n(pt.V.begin() + static_cast<std::ptrdiff_t>(i * J), J, share);
        }
    }
    pt.y.assign(J, theta_min);
    return pt;
}

bool uc_membership(const UnitCommitmentInstance& inst, double theta, const UCPoint& pt) {
    if (pt.u.size() != inst.n_gen || pt.V.size() != inst.n_gen * inst.n_nodes ||
        pt.y.size() != inst.n_nodes) {
        return false;
    }
    std::vector<double> u(pt.u.begin(), pt.u.end());
    return member_flat(inst, theta, u, pt.V, pt.y);
}

double uc_exact_violation(const UnitCommitmentInstance& inst, const UCPoint& pt) {
    const double a = sup_norm(pt.y);
    const double b = commitment_capacity(inst, pt.u) / inst.demand_scale;
    if (a > b) {
        throw InvalidArgument("point is feasible for no scenario (||y||_inf exceeds the covered demand)");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < inst.n_gen; ++i) {
        for (std::size_t j = 0; j < inst.n_nodes; ++j) {
            const double vij = pt.V[i * inst.n_nodes + j];
            if (!(vij >= 0.0 && vij <= pt.u[i])) {
                throw InvalidArgument("dispatch matrix violates 0 <= V_ij <= u_i");
            }
            total += vij;
        }
    }
    if (std::abs(total - inst.total_dispatch) > kDispatchTol) {
        throw InvalidArgument("dispatch matrix does not sum to total_dispatch");
    }
    return std::clamp(inst.dist.cdf_below(a) + inst.dist.tail_above(b), 0.0, 1.0);
}

double uc_payoff(const UnitCommitmentInstance& inst, const UCPoint& pt) {
    double f = commitment_cost(inst, pt.u);
    for (std::size_t i = 0; i < inst.n_gen; ++i) {
        for (std::size_t j = 0; j < inst.n_nodes; ++j) {
            f += pt.V[i * inst.n_nodes + j] * pt.y[j];
        }
    }
    return f;
}

UnitCommitmentProblem::UnitCommitmentProblem(UnitCommitmentInstance inst) : inst_(std::move(inst)) {
    inst_.validate();
}

Dims UnitCommitmentProblem::dims() const {
    return {inst_.n_gen + inst_.n_gen * inst_.n_nodes, inst_.n_nodes};
}

bool UnitCommitmentProblem::membership(double theta, const EquilibriumPoint& point) const {
    const std::span<const double> x(point.x);
    return member_flat(inst_, theta, x.first(inst_.n_gen), x.subspan(inst_.n_gen), point.y);
}

EquilibriumPoint UnitCommitmentProblem::solve(const MultiSample& samples) const {
    return uc_solve(inst_, samples).to_point();
}

bool UnitCommitmentProblem::points_equal(const EquilibriumPoint& a, const EquilibriumPoint& b) const {
    const std::size_t I = inst_.n_gen;
    if (a.x.size() != b.x.size() || a.y.size() != b.y.size() || a.x.size() < I) {
        return false;
    }
    // binary part exact, continuous parts to kUCPointTol
    if (!std::equal(a.x.begin(), a.x.begin() + static_cast<std::ptrdiff_t>(I), b.x.begin())) {
        return false;
    }
    const std::span<const double> va = std::span<const double>(a.x).subspan(I);
    const std::span<const double> vb = std::span<const double>(b.x).subspan(I);
    return sup_distance(va, vb) <= kUCPointTol && sup_distance(a.y, b.y) <= kUCPointTol;
}

double UnitCommitmentProblem::payoff(std::span<const double> x, std::span<const double> y) const {
    const Dims d = dims();
    if (x.size() != d.p || y.size() != d.q) {
        throw InvalidArgument("payoff: dimension mismatch");
    }
    const std::size_t I = inst_.n_gen;
    const std::size_t J = inst_.n_nodes;
    double f = 0.0;
    for (std::size_t i = 0; i < I; ++i) {
        f += inst_.turn_on_cost[i] * x[i];
    }
    for (std::size_t i = 0; i < I; ++i) {
        for (std::size_t j = 0; j < J; ++j) {
            f += x[I + i * J + j] * y[j];
        }
    }
    return f;
}

std::optional<double> UnitCommitmentProblem::exact_violation(const EquilibriumPoint& point) const {
    return uc_exact_violation(inst_, UCPoint::from_point(inst_, point));
}

nlohmann::json UnitCommitmentProblem::point_to_json(const EquilibriumPoint& point) const {
    const UCPoint pt = UCPoint::from_point(inst_, point);
    return nlohmann::json{{"u", pt.u}, {"V", pt.V}, {"y", pt.y}};
}

}  // namespace scenario
