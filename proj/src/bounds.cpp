#include "scenario/bounds.hpp"

#include <cmath>
#include <string>

#include "scenario/core.hpp"

namespace scenario {

namespace {

void check_beta(double beta) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw InvalidArgument("beta must lie in (0, 1)");
    }
}

void check_k(std::size_t k, std::size_t m) {
    if (k >= m) {
        throw InvalidArgument("root equation needs k < m (got k=" + std::to_string(k) +
                              ", m=" + std::to_string(m) + ")");
    }
}

constexpr int kMaxBisectionIters = 200;

}  // namespace

double eval_root_fn(double t, std::size_t k, std::size_t m, double beta) {
    check_k(k, m);
    check_beta(beta);
    if (!(t >= 0.0 && t <= 1.0)) {
        throw InvalidArgument("eval_root_fn: t must lie in [0, 1]");
    }
    // Horner from the top coefficient down; c_{j-1} = c_j (j-k)/j.
    double acc = 0.0;
    double c = 1.0;
    for (std::size_t j = m;; --j) {
        acc = acc * t + c;
        if (j == k) {
            break;
        }
        c *= static_cast<double>(j - k) / static_cast<double>(j);
    }
    return beta / static_cast<double>(m + 1) * acc - std::pow(t, static_cast<double>(m - k));
}

double solve_t(std::size_t k, std::size_t m, double beta, double tol) {
    check_k(k, m);
    check_beta(beta);
    if (!(tol > 0.0)) {
        throw InvalidArgument("solve_t: tol must be positive");
    }
    // F(0) > 0 and F(1) = beta/(k+1) - 1 < 0.
    double lo = 0.0;
    double hi = 1.0;
    for (int iter = 0; iter < kMaxBisectionIters; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= tol || mid <= lo || mid >= hi) {
            const double f = eval_root_fn(mid, k, m, beta);
            if (std::abs(f) > kRootResidualGate) {
                throw NumericalFailure("solve_t: residual " + std::to_string(f) + " above gate at k=" +
                                       std::to_string(k) + ", m=" + std::to_string(m));
            }
            return mid;
        }
        if (eval_root_fn(mid, k, m, beta) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    throw NumericalFailure("solve_t: bisection did not converge within 200 iterations");
}

BoundTable bound_table(std::size_t m, double beta, double tol) {
    if (m == 0) {
        throw InvalidArgument("bound_table: m must be at least 1");
    }
    check_beta(beta);
    BoundTable table;
    table.m = m;
    table.beta = beta;
    table.t.reserve(m);
    table.g.reserve(m + 1);
    for (std::size_t k = 0; k < m; ++k) {
        const double t = solve_t(k, m, beta, tol);
        table.t.push_back(t);
        table.g.push_back(1.0 - t);
    }
    table.g.push_back(1.0);
    return table;
}

}  // namespace scenario
