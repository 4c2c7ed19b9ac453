#pragma once

// Test-only helpers for the stationary residual: random boxes with points
// pinned to faces, and a brute-force distance to a shifted normal cone.

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <utility>
#include <vector>

#include "scenario/core.hpp"
#include "scenario/stationary.hpp"

namespace stationary_oracle {

using scenario::BoxRegion;
using scenario::SplitMix64;

/// Box inside [-1.5, 1.5]^n and a point whose coordinates sit on the lower
/// face, the upper face or strictly inside with equal probability.
inline std::pair<BoxRegion, std::vector<double>> random_box_and_point(SplitMix64& rng, std::size_t n) {
    std::vector<double> lo(n), hi(n), pt(n);
    for (std::size_t d = 0; d < n; ++d) {
        const double a = -1.5 + 3.0 * rng.next_unit();
        const double b = -1.5 + 3.0 * rng.next_unit();
        lo[d] = std::min(a, b);
        hi[d] = std::max(a, b);
        switch (rng.next() % 3) {
            case 0:
                pt[d] = lo[d];
                break;
            case 1:
                pt[d] = hi[d];
                break;
            default:
                pt[d] = lo[d] + (hi[d] - lo[d]) * (0.05 + 0.9 * rng.next_unit());
        }
    }
    return {BoxRegion(lo, hi), pt};
}

/// Outer box, inner box contained in it, and a point of the inner box, often
/// on an inner face.
inline std::tuple<BoxRegion, BoxRegion, std::vector<double>> nested_boxes_and_point(SplitMix64& rng,
                                                                                     std::size_t n) {
    auto [inner, pt] = random_box_and_point(rng, n);
    std::vector<double> lo(n), hi(n);
    for (std::size_t d = 0; d < n; ++d) {
        lo[d] = inner.lower()[d] - (rng.next() % 2 ? 0.0 : rng.next_unit());
        hi[d] = inner.upper()[d] + (rng.next() % 2 ? 0.0 : rng.next_unit());
    }
    return {BoxRegion(lo, hi), inner, pt};
}

/// min over n in N_box(at) of ||g + n||, searching a product grid over the
/// constrained coordinates and repeatedly zooming in on the best cell.
inline double normal_cone_distance(const BoxRegion& box, const std::vector<double>& at,
                                   const std::vector<double>& g) {
    const std::size_t n = at.size();
    // per-coordinate cone as an interval [cone_lo, cone_hi]
    std::vector<double> cone_lo(n, 0.0), cone_hi(n, 0.0);
    double scale = 1.0;
    for (double e : g) {
        scale = std::max(scale, 2.0 * std::abs(e));
    }
    constexpr double kInf = std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < n; ++d) {
        const bool at_lo = at[d] == box.lower()[d];
        const bool at_hi = at[d] == box.upper()[d];
        if (at_lo && at_hi) {
            cone_lo[d] = -kInf;
            cone_hi[d] = kInf;
        } else if (at_lo) {
            cone_lo[d] = -kInf;
        } else if (at_hi) {
            cone_hi[d] = kInf;
        }
    }

    std::vector<double> center(n, 0.0);
    double width = scale;
    double best = kInf;
    constexpr int kPts = 41;
    for (int level = 0; level < 12; ++level) {
        std::vector<double> lo(n), hi(n);
        for (std::size_t d = 0; d < n; ++d) {
            lo[d] = std::max(cone_lo[d], center[d] - width);
            hi[d] = std::min(cone_hi[d], center[d] + width);
        }
        std::vector<int> idx(n, 0);
        std::vector<double> best_n = center;
        while (true) {
            double s = 0.0;
            std::vector<double> cand(n);
            for (std::size_t d = 0; d < n; ++d) {
                cand[d] = lo[d] + (hi[d] - lo[d]) * idx[d] / (kPts - 1);
                s += (g[d] + cand[d]) * (g[d] + cand[d]);
            }
            if (std::sqrt(s) < best) {
                best = std::sqrt(s);
                best_n = cand;
            }
            std::size_t d = 0;
            while (d < n && ++idx[d] == kPts) {
                idx[d++] = 0;
            }
            if (d == n) {
                break;
            }
        }
        center = best_n;
        width /= 8.0;
    }
    return best;
}

}  // namespace stationary_oracle
