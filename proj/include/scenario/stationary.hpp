#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "scenario/core.hpp"

namespace scenario {

inline constexpr double kBoundaryTol = 1e-9;
inline constexpr double kInsideTol = 1e-12;

/// Axis-aligned box {v : lower <= v <= upper}.
class BoxRegion {
public:
    BoxRegion(std::vector<double> lower, std::vector<double> upper);

    /// [-half_width, half_width]^dim.
    static BoxRegion symmetric(std::size_t dim, double half_width);

    std::size_t dim() const noexcept { return lower_.size(); }
    std::span<const double> lower() const noexcept { return lower_; }
    std::span<const double> upper() const noexcept { return upper_; }

    bool contains(std::span<const double> v, double tol = kInsideTol) const noexcept;
    bool is_subset_of(const BoxRegion& other) const noexcept;

    /// Euclidean projection (componentwise clamp).
    std::vector<double> project(std::span<const double> v) const;
    std::vector<double> center() const;

    /// Intersection; throws InvalidArgument when it is empty.
    BoxRegion intersect(const BoxRegion& other) const;

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
};

struct Gradient {
    std::vector<double> dx;
    std::vector<double> dy;
};

/// Continuously differentiable payoff f(x, y) whose feasible sets X^M, Y^M
/// are boxes determined by the multisample.
class BoxGame {
public:
    virtual ~BoxGame() = default;
    virtual Dims dims() const = 0;
    virtual double value(std::span<const double> x, std::span<const double> y) const = 0;
    virtual Gradient gradient(std::span<const double> x, std::span<const double> y) const = 0;
    virtual std::pair<BoxRegion, BoxRegion> feasible_boxes(const MultiSample& samples) const = 0;
};

struct GDAParams {
    double step_x = 0.05;
    double step_y = 0.05;
    std::size_t max_iters = 2000;
    std::size_t n_starts = 8;
    double residual_tol = 1e-10;

    void validate() const;
};

struct StationaryResult {
    EquilibriumPoint point;
    double residual = 0.0;
    std::size_t iterations = 0;
    std::size_t start_index = 0;
};

/// Projection of v onto the tangent cone of box at `at`. Components at the
/// lower bound keep only their positive part, components at the upper bound
/// only their negative part; degenerate components become 0.
std::vector<double> tangent_project(const BoxRegion& box, std::span<const double> at,
                                    std::span<const double> v);

/// Stationary residual
///   max( dist(0, grad_x f + N_X(x)), dist(0, -grad_y f + N_Y(y)) ),
/// evaluated as max(||P_T(-grad_x f)||, ||P_T(grad_y f)||) using the polar
/// relation between tangent and normal cones of a convex set.
double residual(const BoxGame& game, const BoxRegion& x_box, const BoxRegion& y_box,
                std::span<const double> x, std::span<const double> y);

/// Alternating projected gradient descent-ascent (x step first). Returns the
/// lowest-residual iterate seen, including the start.
StationaryResult projected_gda(const BoxGame& game, const BoxRegion& x_box, const BoxRegion& y_box,
                               const EquilibriumPoint& start, const GDAParams& params);

/// Deterministic multistart residual minimization on X^M x Y^M. Start 0 is
/// the box center, starts 1..n_starts are drawn uniformly in the boxes from
/// streams derived from `seed`. The lowest residual wins; exact ties go to
/// the lower start index.
StationaryResult min_residual_map(const BoxGame& game, const MultiSample& samples, const GDAParams& params,
                                  std::uint64_t seed);

}  // namespace scenario
