#pragma once

#include <cstddef>
#include <vector>

namespace scenario {

inline constexpr double kDefaultBracketTol = 1e-12;
inline constexpr double kRootResidualGate = 1e-9;

/// Certificate values g(k) for k = 0..m at confidence parameter beta.
/// g[m] is exactly 1; t has m entries (no root for k = m).
struct BoundTable {
    std::size_t m = 0;
    double beta = 0.0;
    std::vector<double> g;
    std::vector<double> t;
};

/// F(t) = beta/(m+1) * sum_{j=k}^{m} c_j t^{j-k} - t^{m-k}, with
/// c_j = C(j,k)/C(m,k). This is the binomial root equation divided by the
/// positive constant C(m,k), so it has the same sign and roots but never
/// overflows for large m.
double eval_root_fn(double t, std::size_t k, std::size_t m, double beta);

/// Unique root of eval_root_fn in (0, 1), by bisection.
double solve_t(std::size_t k, std::size_t m, double beta, double tol = kDefaultBracketTol);

BoundTable bound_table(std::size_t m, double beta, double tol = kDefaultBracketTol);

}  // namespace scenario
