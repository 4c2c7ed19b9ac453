#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "scenario/bounds.hpp"
#include "scenario/core.hpp"

using namespace scenario;

namespace {

double log_binom(double n, double k) { return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1); }

// Un-normalized left-hand side of the root equation, evaluated term by term
// with binomials from log-gamma.
long double raw_root_fn(long double t, int k, int m, long double beta) {
    long double sum = 0.0L;
    for (int j = k; j <= m; ++j) {
        sum += std::exp(static_cast<long double>(log_binom(j, k))) * std::pow(t, static_cast<long double>(j - k));
    }
    return beta / (m + 1) * sum - std::exp(static_cast<long double>(log_binom(m, k))) * std::pow(t, m - k);
}

}  // namespace

TEST_CASE("eval_root_fn closed-form values") {
    SUBCASE("F(0) keeps only the j = k term") {
        for (std::size_t m : {1u, 5u, 30u, 100u}) {
            for (std::size_t k = 0; k < m; ++k) {
                const double expected = 0.05 / static_cast<double>(m + 1) * std::exp(-log_binom(m, k));
                CHECK(eval_root_fn(0.0, k, m, 0.05) == doctest::Approx(expected).epsilon(1e-10));
                CHECK(eval_root_fn(0.0, k, m, 0.05) > 0.0);
            }
        }
    }

    SUBCASE("F(1) = beta/(k+1) - 1 (hockey stick)") {
        for (std::size_t m = 1; m <= 100; ++m) {
            for (std::size_t k = 0; k < m; ++k) {
                for (double beta : {0.01, 0.1}) {
                    CHECK(std::abs(eval_root_fn(1.0, k, m, beta) - (beta / (k + 1.0) - 1.0)) <= 1e-12);
                }
            }
        }
    }

    SUBCASE("two-term hand evaluation") {
        CHECK(eval_root_fn(0.5, 0, 1, 0.01) == doctest::Approx(-0.4925).epsilon(1e-14));
    }

    SUBCASE("errors") {
        CHECK_THROWS_AS(eval_root_fn(0.5, 3, 3, 0.01), InvalidArgument);
        CHECK_THROWS_AS(eval_root_fn(0.5, 0, 3, 0.0), InvalidArgument);
        CHECK_THROWS_AS(eval_root_fn(0.5, 0, 3, 1.0), InvalidArgument);
        CHECK_THROWS_AS(eval_root_fn(1.5, 0, 3, 0.5), InvalidArgument);
    }
}

TEST_CASE("normalized and raw root functions agree in sign") {
    SplitMix64 rng(2024);
    int compared = 0;
    for (int probe = 0; probe < 1000; ++probe) {
        const int m = 1 + static_cast<int>(rng.next() % 30);
        const int k = static_cast<int>(rng.next() % static_cast<std::uint64_t>(m));
        const double beta = 0.001 + 0.998 * rng.next_unit();
        const double t = rng.next_unit();
        const double f = eval_root_fn(t, k, m, beta);
        const long double raw = raw_root_fn(t, k, m, beta);
        // skip probes sitting on a root where rounding decides the sign
        if (std::abs(f) < 1e-12) {
            continue;
        }
        ++compared;
        CHECK((f > 0.0) == (raw > 0.0L));
    }
    CHECK(compared > 900);
}

TEST_CASE("solve_t") {
    SUBCASE("linear cases solved by hand") {
        CHECK(std::abs(solve_t(0, 1, 0.01) - 0.01 / (2.0 - 0.01)) <= 1e-12);
        CHECK(std::abs(solve_t(0, 1, 0.01) - 0.005025125628140704) <= 1e-12);
        CHECK(std::abs(solve_t(1, 2, 0.1) - 0.1 / (6.0 - 0.2)) <= 1e-12);
    }

    SUBCASE("k = m - 1 single-step algebra") {
        for (std::size_t m : {2u, 5u, 10u}) {
            for (double beta : {0.01, 0.05, 0.1}) {
                const double md = static_cast<double>(m);
                CHECK(std::abs(solve_t(m - 1, m, beta) - beta / (md * (md + 1.0 - beta))) <= 1e-12);
            }
        }
    }

    SUBCASE("residual gate on every root up to m = 200") {
        for (double beta : {0.01, 0.05, 0.1}) {
            for (std::size_t m = 1; m <= 200; m += (m < 20 ? 1 : 9)) {
                for (std::size_t k = 0; k < m; ++k) {
                    const double t = solve_t(k, m, beta);
                    CHECK(t > 0.0);
                    CHECK(t < 1.0);
                    CHECK(std::abs(eval_root_fn(t, k, m, beta)) <= 1e-9);
                }
            }
        }
    }

    SUBCASE("errors") {
        CHECK_THROWS_AS(solve_t(2, 2, 0.1), InvalidArgument);
        CHECK_THROWS_AS(solve_t(0, 2, 0.1, 0.0), InvalidArgument);
    }
}

TEST_CASE("bound_table") {
    SUBCASE("m = 1") {
        const BoundTable t = bound_table(1, 0.01);
        REQUIRE(t.g.size() == 2);
        REQUIRE(t.t.size() == 1);
        CHECK(std::abs(t.g[0] - (1.0 - 0.01 / 1.99)) <= 1e-12);
        CHECK(t.g[1] == 1.0);
    }

    SUBCASE("invariants: g(m) = 1, range, monotone in k") {
        for (std::size_t m : {1u, 2u, 5u, 20u, 100u}) {
            for (double beta : {0.01, 0.05, 0.1}) {
                const BoundTable t = bound_table(m, beta);
                CHECK(t.g.back() == 1.0);
                for (std::size_t k = 0; k <= m; ++k) {
                    CHECK(t.g[k] >= 0.0);
                    CHECK(t.g[k] <= 1.0);
                    if (k > 0) {
                        CHECK(t.g[k] >= t.g[k - 1]);
                    }
                }
            }
        }
    }

    SUBCASE("smaller beta gives a larger bound") {
        for (std::size_t m : {5u, 20u, 100u}) {
            const BoundTable a = bound_table(m, 0.01);
            const BoundTable b = bound_table(m, 0.05);
            const BoundTable c = bound_table(m, 0.1);
            for (std::size_t k = 0; k < m; ++k) {
                CHECK(a.g[k] >= b.g[k]);
                CHECK(b.g[k] >= c.g[k]);
            }
        }
    }

    SUBCASE("errors") {
        CHECK_THROWS_AS(bound_table(0, 0.01), InvalidArgument);
        CHECK_THROWS_AS(bound_table(5, 1.5), InvalidArgument);
    }
}
