#include "scenario/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace scenario {

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double e : v) {
        s += e * e;
    }
    return std::sqrt(s);
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double e) { return std::isfinite(e); });
}

void check_dims(const BoxGame& game, const BoxRegion& x_box, const BoxRegion& y_box) {
    const Dims d = game.dims();
    if (x_box.dim() != d.p || y_box.dim() != d.q) {
        throw InvalidArgument("box dimensions do not match the game");
    }
}

}  // namespace

BoxRegion::BoxRegion(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() != upper_.size()) {
        throw InvalidArgument("box bounds have different dimensions");
    }
    for (std::size_t d = 0; d < lower_.size(); ++d) {
        if (!(lower_[d] <= upper_[d])) {
            throw InvalidArgument("box requires lower <= upper in every coordinate");
        }
    }
}

BoxRegion BoxRegion::symmetric(std::size_t dim, double half_width) {
    return BoxRegion(std::vector<double>(dim, -half_width), std::vector<double>(dim, half_width));
}

bool BoxRegion::contains(std::span<const double> v, double tol) const noexcept {
    if (v.size() != dim()) {
        return false;
    }
    for (std::size_t d = 0; d < v.size(); ++d) {
        if (!(v[d] >= lower_[d] - tol && v[d] <= upper_[d] + tol)) {
            return false;
        }
    }
    return true;
}

bool BoxRegion::is_subset_of(const BoxRegion& other) const noexcept {
    if (other.dim() != dim()) {
        return false;
    }
    for (std::size_t d = 0; d < dim(); ++d) {
        if (lower_[d] < other.lower_[d] || upper_[d] > other.upper_[d]) {
            return false;
        }
    }
    return true;
}

std::vector<double> BoxRegion::project(std::span<const double> v) const {
    std::vector<double> out(v.begin(), v.end());
    for (std::size_t d = 0; d < out.size(); ++d) {
        out[d] = std::clamp(out[d], lower_[d], upper_[d]);
    }
    return out;
}

std::vector<double> BoxRegion::center() const {
    std::vector<double> c(dim());
    for (std::size_t d = 0; d < c.size(); ++d) {
        c[d] = 0.5 * (lower_[d] + upper_[d]);
    }
    return c;
}

BoxRegion BoxRegion::intersect(const BoxRegion& other) const {
    if (other.dim() != dim()) {
        throw InvalidArgument("cannot intersect boxes of different dimension");
    }
    std::vector<double> lo(dim());
    std::vector<double> hi(dim());
    for (std::size_t d = 0; d < dim(); ++d) {
        lo[d] = std::max(lower_[d], other.lower_[d]);
        hi[d] = std::min(upper_[d], other.upper_[d]);
    }
    return BoxRegion(std::move(lo), std::move(hi));
}

void GDAParams::validate() const {
    if (!(step_x > 0.0) || !(step_y > 0.0)) {
        throw InvalidArgument("GDA step sizes must be positive");
    }
    if (n_starts < 1) {
        throw InvalidArgument("GDA needs at least one seeded start");
    }
    if (!(residual_tol >= 0.0)) {
        throw InvalidArgument("residual_tol must be non-negative");
    }
}

std::vector<double> tangent_project(const BoxRegion& box, std::span<const double> at, std::span<const double> v) {
    if (at.size() != box.dim() || v.size() != box.dim()) {
        throw InvalidArgument("tangent_project: dimension mismatch");
    }
    if (!box.contains(at)) {
        throw InvalidArgument("tangent_project: point lies outside the box");
    }
    std::vector<double> out(v.begin(), v.end());
    const auto lower = box.lower();
    const auto upper = box.upper();
    for (std::size_t d = 0; d < out.size(); ++d) {
        const bool at_lower = at[d] <= lower[d] + kBoundaryTol;
        const bool at_upper = at[d] >= upper[d] - kBoundaryTol;
        if (at_lower && at_upper) {
            out[d] = 0.0;
        } else if (at_lower) {
            out[d] = std::max(out[d], 0.0);
        } else if (at_upper) {
            out[d] = std::min(out[d], 0.0);
        }
    }
    return out;
}

namespace {

double residual_from_gradient(const BoxRegion& x_box, const BoxRegion& y_box, std::span<const double> x,
                              std::span<const double> y, const Gradient& g) {
    std::vector<double> neg_dx(g.dx.size());
    std::transform(g.dx.begin(), g.dx.end(), neg_dx.begin(), [](double e) { return -e; });
    const double rx = norm2(tangent_project(x_box, x, neg_dx));
    const double ry = norm2(tangent_project(y_box, y, g.dy));
    return std::max(rx, ry);
}

Gradient checked_gradient(const BoxGame& game, std::span<const double> x, std::span<const double> y) {
    Gradient g = game.gradient(x, y);
    if (!all_finite(g.dx) || !all_finite(g.dy)) {
        throw NumericalFailure("non-finite gradient");
    }
    return g;
}

}  // namespace

double residual(const BoxGame& game, const BoxRegion& x_box, const BoxRegion& y_box, std::span<const double> x,
                std::span<const double> y) {
    check_dims(game, x_box, y_box);
    return residual_from_gradient(x_box, y_box, x, y, game.gradient(x, y));
}

StationaryResult projected_gda(const BoxGame& game, const BoxRegion& x_box, const BoxRegion& y_box,
                               const EquilibriumPoint& start, const GDAParams& params) {
    check_dims(game, x_box, y_box);
    params.validate();
    if (!x_box.contains(start.x) || !y_box.contains(start.y)) {
        throw InvalidArgument("projected_gda: start lies outside the boxes");
    }

    std::vector<double> x = start.x;
    std::vector<double> y = start.y;
    Gradient g = checked_gradient(game, x, y);

    StationaryResult best;
    best.point = start;
    best.residual = residual_from_gradient(x_box, y_box, x, y, g);
    best.iterations = 0;

    std::vector<double> step(x.size());
    for (std::size_t it = 1; it <= params.max_iters && best.residual > params.residual_tol; ++it) {
        for (std::size_t d = 0; d < x.size(); ++d) {
            step[d] = x[d] - params.step_x * g.dx[d];
        }
        x = x_box.project(step);

        const Gradient gy = checked_gradient(game, x, y);
        std::vector<double> ystep(y.size());
        for (std::size_t d = 0; d < y.size(); ++d) {
            ystep[d] = y[d] + params.step_y * gy.dy[d];
        }
        y = y_box.project(ystep);

        g = checked_gradient(game, x, y);
        const double r = residual_from_gradient(x_box, y_box, x, y, g);
        if (r < best.residual) {
            best.point = EquilibriumPoint{x, y};
            best.residual = r;
            best.iterations = it;
        }
    }
    return best;
}

StationaryResult min_residual_map(const BoxGame& game, const MultiSample& samples, const GDAParams& params,
                                  std::uint64_t seed) {
    params.validate();
    const auto [x_box, y_box] = game.feasible_boxes(samples);
    check_dims(game, x_box, y_box);

    auto draw_in = [](const BoxRegion& box, SplitMix64& rng) {
        std::vector<double> v(box.dim());
        for (std::size_t d = 0; d < v.size(); ++d) {
            v[d] = box.lower()[d] + (box.upper()[d] - box.lower()[d]) * rng.next_unit();
        }
        return v;
    };

    StationaryResult best;
    for (std::size_t s = 0; s <= params.n_starts; ++s) {
        EquilibriumPoint start;
        if (s == 0) {
            start = EquilibriumPoint{x_box.center(), y_box.center()};
        } else {
            SplitMix64 rng(derive_seed(seed, {static_cast<std::uint64_t>(s)}));
            start.x = draw_in(x_box, rng);
            start.y = draw_in(y_box, rng);
        }
        StationaryResult r = projected_gda(game, x_box, y_box, start, params);
        r.start_index = s;
        if (s == 0 || r.residual < best.residual) {
            best = std::move(r);
        }
    }
    return best;
}

}  // namespace scenario
