#include "scenario/synthetic.hpp"

#include <algorithm>
#include <cmath>

namespace scenario {

namespace {

void check_xy(const SyntheticInstance& inst, std::span<const double> x, std::span<const double> y) {
    if (x.size() != inst.p || y.size() != inst.q) {
        throw InvalidArgument("synthetic game: dimension mismatch");
    }
}

double max_norm(const EquilibriumPoint& pt) { return std::max(sup_norm(pt.x), sup_norm(pt.y)); }

}  // namespace

void SyntheticInstance::validate() const {
    if (p < 1 || q < 1) {
        throw InvalidArgument("synthetic game needs p, q >= 1");
    }
    if (!(amp >= 0.0) || !std::isfinite(freq)) {
        throw InvalidArgument("synthetic game needs amp >= 0 and finite freq");
    }
}

double syn_payoff(const SyntheticInstance& inst, std::span<const double> x, std::span<const double> y) {
    check_xy(inst, x, y);
    double f = 0.0;
    for (double e : x) {
        f += 0.5 * e * e;
    }
    for (double e : y) {
        f -= 0.5 * e * e;
    }
    const std::size_t n = std::min(inst.p, inst.q);
    for (std::size_t d = 0; d < n; ++d) {
        f += inst.amp * std::sin(inst.freq * x[d]) * std::sin(inst.freq * y[d]);
    }
    return f;
}

Gradient syn_grad(const SyntheticInstance& inst, std::span<const double> x, std::span<const double> y) {
    check_xy(inst, x, y);
    Gradient g;
    g.dx.assign(x.begin(), x.end());
    g.dy.resize(y.size());
    std::transform(y.begin(), y.end(), g.dy.begin(), [](double e) { return -e; });
    const std::size_t n = std::min(inst.p, inst.q);
    const double af = inst.amp * inst.freq;
    for (std::size_t d = 0; d < n; ++d) {
        const double sx = std::sin(inst.freq * x[d]);
        const double sy = std::sin(inst.freq * y[d]);
        g.dx[d] += af * std::cos(inst.freq * x[d]) * sy;
        g.dy[d] += af * sx * std::cos(inst.freq * y[d]);
    }
    return g;
}

bool syn_membership(const SyntheticInstance& inst, double theta, const EquilibriumPoint& pt) {
    if (pt.x.size() != inst.p || pt.y.size() != inst.q) {
        throw InvalidArgument("synthetic membership: dimension mismatch");
    }
    return max_norm(pt) <= theta;
}

double syn_exact_violation(const SyntheticInstance& inst, const EquilibriumPoint& pt) {
    if (pt.x.size() != inst.p || pt.y.size() != inst.q) {
        throw InvalidArgument("synthetic violation: dimension mismatch");
    }
    return inst.dist.cdf_below(max_norm(pt));
}

SyntheticGame::SyntheticGame(SyntheticInstance inst) : inst_(std::move(inst)) { inst_.validate(); }

double SyntheticGame::value(std::span<const double> x, std::span<const double> y) const {
    return syn_payoff(inst_, x, y);
}

Gradient SyntheticGame::gradient(std::span<const double> x, std::span<const double> y) const {
    return syn_grad(inst_, x, y);
}

std::pair<BoxRegion, BoxRegion> SyntheticGame::feasible_boxes(const MultiSample& samples) const {
    const double half = samples.min();
    if (!(half >= 0.0)) {
        throw InvalidArgument("synthetic game: negative scenario gives an empty box");
    }
    return {BoxRegion::symmetric(inst_.p, half), BoxRegion::symmetric(inst_.q, half)};
}

SyntheticProblem::SyntheticProblem(SyntheticInstance inst, GDAParams params, std::uint64_t solver_seed)
    : game_(std::move(inst)), params_(params), seed_(solver_seed) {
    params_.validate();
}

StationaryResult SyntheticProblem::solve_stationary(const MultiSample& samples) const {
    return min_residual_map(game_, samples, params_, seed_);
}

bool SyntheticProblem::membership(double theta, const EquilibriumPoint& point) const {
    return syn_membership(game_.instance(), theta, point);
}

EquilibriumPoint SyntheticProblem::solve(const MultiSample& samples) const {
    return solve_stationary(samples).point;
}

bool SyntheticProblem::points_equal(const EquilibriumPoint& a, const EquilibriumPoint& b) const {
    return sup_distance(a.x, b.x) <= kSyntheticPointTol && sup_distance(a.y, b.y) <= kSyntheticPointTol;
}

double SyntheticProblem::payoff(std::span<const double> x, std::span<const double> y) const {
    return syn_payoff(game_.instance(), x, y);
}

std::optional<double> SyntheticProblem::exact_violation(const EquilibriumPoint& point) const {
    return syn_exact_violation(game_.instance(), point);
}

}  // namespace scenario
