// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// gating criterion fails. Criterion 8 is a diagnostic and never gates.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "scenario/bounds.hpp"
#include "scenario/consistency.hpp"
#include "scenario/experiment.hpp"
#include "scenario/stationary.hpp"
#include "scenario/synthetic.hpp"
#include "scenario/unit_commitment.hpp"
#include "stationary_oracle.hpp"
#include "uc_oracle.hpp"

using namespace scenario;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* title;
    double time_limit_s;  // <= 0: no runtime gate
    bool gating;
    std::function<Outcome()> body;
};

// Shared between criteria 4, 5 and 9.
ExperimentConfig uc_config() {
    ExperimentConfig cfg;
    cfg.problem = ProblemKind::unit_commitment;
    cfg.beta = 0.01;
    cfg.m_values = ExperimentConfig::default_m_values();
    cfg.repetitions = 200;
    cfg.n_test = 10000;
    cfg.master_seed = 1;
    cfg.violation_mode = ViolationMode::both;
    return cfg;
}

ExperimentResult& uc_run() {
    static ExperimentResult result = run_experiment(uc_config(), {1, false, false});
    return result;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Outcome closed_form_bounds() {
    double worst = 0.0;
    const double g0 = bound_table(1, 0.01).g[0];
    worst = std::max(worst, std::abs(g0 - (1.0 - 0.01 / (2.0 - 0.01))));
    bool top_exact = true;
    for (std::size_t m : {2, 5, 10}) {
        for (double beta : {0.01, 0.1}) {
            const BoundTable t = bound_table(m, beta);
            const double md = static_cast<double>(m);
            worst = std::max(worst, std::abs(t.t[m - 1] - beta / (md * (md + 1.0 - beta))));
            top_exact = top_exact && t.g[m] == 1.0;
        }
    }
    for (std::size_t m = 1; m <= 100; ++m) {
        top_exact = top_exact && bound_table(m, 0.01).g[m] == 1.0;
    }
    return {worst <= 1e-9 && top_exact,
            "max closed-form error " + fmt("%.3g", worst) + (top_exact ? ", g(M) = 1" : ", g(M) != 1")};
}

Outcome root_identities() {
    double f1_err = 0.0;
    double root_res = 0.0;
    bool monotone = true;
    for (double beta : {0.01, 0.1}) {
        for (std::size_t m = 1; m <= 100; ++m) {
            const BoundTable table = bound_table(m, beta);
            for (std::size_t k = 0; k < m; ++k) {
                const double expect = beta / static_cast<double>(k + 1) - 1.0;
                f1_err = std::max(f1_err, std::abs(eval_root_fn(1.0, k, m, beta) - expect));
                root_res = std::max(root_res, std::abs(eval_root_fn(table.t[k], k, m, beta)));
            }
            if (m == 5 || m == 20 || m == 100) {
                for (std::size_t k = 1; k <= m; ++k) {
                    monotone = monotone && table.g[k] >= table.g[k - 1];
                }
            }
        }
    }
    return {f1_err <= 1e-12 && root_res <= 1e-9 && monotone,
            "max |F(1) - closed form| " + fmt("%.3g", f1_err) + ", max |F(t(k))| " + fmt("%.3g", root_res) +
                (monotone ? ", g monotone" : ", g not monotone")};
}

Outcome uc_oracle_equivalence() {
    const UnitCommitmentInstance inst;
    SplitMix64 rng(2024);
    int u_mismatch = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 1 + rng.next() % 30;
        const MultiSample ms = sample_multisample(inst.dist, m, rng.next());
        const UCPoint pt = uc_solve(inst, ms);
        const auto oracle = uc_oracle::solve({ms.thetas().begin(), ms.thetas().end()}, 101);
        if (!std::equal(pt.u.begin(), pt.u.end(), oracle.u.begin())) {
            ++u_mismatch;
        }
        worst = std::max(worst, std::abs(uc_payoff(inst, pt) - oracle.envelope));
    }
    return {u_mismatch == 0 && worst <= 1e-9,
            std::to_string(u_mismatch) + " commitment mismatches, max payoff gap " + fmt("%.3g", worst)};
}

Outcome guarantee_reproduction() {
    const ExperimentResult& res = uc_run();
    const Summary& s = res.summary;
    bool s_ok = true;
    for (const ResultRow& r : res.rows) {
        s_ok = s_ok && !r.failed() && *r.s_star <= 2;
    }
    double mean5 = NAN;
    double mean100 = NAN;
    for (const PerMSummary& p : s.per_m) {
        if (p.m == 5) {
            mean5 = *p.v_mean;
        }
        if (p.m == 100) {
            mean100 = *p.v_mean;
        }
    }
    // exceedance gate uses exact violations; the figure means use empirical ones,
    // so recompute the means from exact values
    double e5 = 0.0;
    double e100 = 0.0;
    for (const ResultRow& r : res.rows) {
        if (r.m == 5) {
            e5 += *r.violation_exact / 200.0;
        }
        if (r.m == 100) {
            e100 += *r.violation_exact / 200.0;
        }
    }
    const bool pass = s.failed_runs == 0 && s.beta_hat <= 0.01 && s_ok && e100 < e5;
    std::ostringstream os;
    os << s.bound_exceedances << "/" << s.total_runs << " exceedances (beta_hat " << s.beta_hat << ")"
       << ", s_star <= 2: " << (s_ok ? "yes" : "no") << ", mean exact violation M=5 " << e5 << " vs M=100 " << e100
       << " (empirical " << mean5 << " vs " << mean100 << ")";
    return {pass, os.str()};
}

Outcome estimator_calibration() {
    double worst = 0.0;
    std::size_t bad = 0;
    for (const ResultRow& r : uc_run().rows) {
        const double gap = std::abs(*r.violation_empirical - *r.violation_exact);
        worst = std::max(worst, gap);
        bad += gap > 0.02;
    }
    return {bad == 0, std::to_string(bad) + " rows above 0.02, max gap " + fmt("%.4f", worst)};
}

class OrderSensitiveProblem final : public ScenarioProblem {
public:
    std::string_view name() const override { return "order_sensitive"; }
    Dims dims() const override { return inner_.dims(); }
    const ScenarioDistribution& distribution() const override { return inner_.distribution(); }
    bool membership(double theta, const EquilibriumPoint& p) const override { return inner_.membership(theta, p); }
    EquilibriumPoint solve(const MultiSample& s) const override {
        EquilibriumPoint z = inner_.solve(s);
        z.y.assign(z.y.size(), s[0]);
        return z;
    }
    bool points_equal(const EquilibriumPoint& a, const EquilibriumPoint& b) const override {
        return inner_.points_equal(a, b);
    }
    double payoff(std::span<const double> x, std::span<const double> y) const override {
        return inner_.payoff(x, y);
    }

private:
    UnitCommitmentProblem inner_;
};

Outcome consistency_suite() {
    const ConsistencyReport uc = check_consistency(UnitCommitmentProblem{}, 500, 1);
    const ConsistencyReport mock = check_consistency(OrderSensitiveProblem{}, 500, 1);
    const std::size_t uc_failed =
        uc.permutation.failed + uc.feasible_augmentation.failed + uc.infeasible_augmentation.failed;
    std::ostringstream os;
    os << "UC failures " << uc_failed << " (passed " << uc.permutation.passed << "/"
       << uc.feasible_augmentation.passed << "/" << uc.infeasible_augmentation.passed << ", skipped "
       << uc.feasible_augmentation.skipped << "/" << uc.infeasible_augmentation.skipped
       << "), order-sensitive mock permutation failures " << mock.permutation.failed;
    return {uc_failed == 0 && uc.ok() && mock.permutation.failed > 0, os.str()};
}

Outcome stationary_properties() {
    const SyntheticInstance inst;
    const SyntheticGame game(inst);

    SplitMix64 rng(8);
    std::size_t mono_bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto [ox, ix, x] = stationary_oracle::nested_boxes_and_point(rng, inst.p);
        const auto [oy, iy, y] = stationary_oracle::nested_boxes_and_point(rng, inst.q);
        mono_bad += residual(game, ix, iy, x, y) > residual(game, ox, oy, x, y) + 1e-12;
    }

    double fd_worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> x(inst.p), y(inst.q);
        for (double& e : x) {
            e = -1.5 + 3.0 * rng.next_unit();
        }
        for (double& e : y) {
            e = -1.5 + 3.0 * rng.next_unit();
        }
        const Gradient g = syn_grad(inst, x, y);
        std::vector<double> all = g.dx;
        all.insert(all.end(), g.dy.begin(), g.dy.end());
        std::vector<double> fd;
        const double h = 1e-6;
        for (std::size_t d = 0; d < x.size(); ++d) {
            auto xp = x, xm = x;
            xp[d] += h;
            xm[d] -= h;
            fd.push_back((syn_payoff(inst, xp, y) - syn_payoff(inst, xm, y)) / (2 * h));
        }
        for (std::size_t d = 0; d < y.size(); ++d) {
            auto yp = y, ym = y;
            yp[d] += h;
            ym[d] -= h;
            fd.push_back((syn_payoff(inst, x, yp) - syn_payoff(inst, x, ym)) / (2 * h));
        }
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < fd.size(); ++i) {
            num += (all[i] - fd[i]) * (all[i] - fd[i]);
            den += fd[i] * fd[i];
        }
        fd_worst = std::max(fd_worst, std::sqrt(num) / std::max(std::sqrt(den), 1e-8));
    }

    double cone_worst = 0.0;
    for (std::size_t n : {1u, 2u}) {
        SyntheticInstance small = inst;
        small.p = n;
        small.q = n;
        const SyntheticGame g(small);
        for (int trial = 0; trial < 150; ++trial) {
            const auto [xb, x] = stationary_oracle::random_box_and_point(rng, n);
            const auto [yb, y] = stationary_oracle::random_box_and_point(rng, n);
            const Gradient grad = g.gradient(x, y);
            std::vector<double> neg_dy(n);
            for (std::size_t d = 0; d < n; ++d) {
                neg_dy[d] = -grad.dy[d];
            }
            const double brute = std::max(stationary_oracle::normal_cone_distance(xb, x, grad.dx),
                                          stationary_oracle::normal_cone_distance(yb, y, neg_dy));
            cone_worst = std::max(cone_worst, std::abs(residual(g, xb, yb, x, y) - brute));
        }
    }

    return {mono_bad == 0 && fd_worst <= 1e-5 && cone_worst <= 1e-6,
            std::to_string(mono_bad) + " monotonicity violations, max FD rel. error " + fmt("%.3g", fd_worst) +
                ", max cone gap " + fmt("%.3g", cone_worst)};
}

Outcome synthetic_diagnostic() {
    ExperimentConfig cfg;
    cfg.problem = ProblemKind::synthetic;
    cfg.beta = 0.01;
    cfg.m_values = {5, 10, 20, 30};
    cfg.repetitions = 125;
    cfg.n_test = 1000;
    cfg.violation_mode = ViolationMode::exact;
    const Summary s = run_experiment(cfg, {1, false, false}).summary;
    std::ostringstream os;
    os << s.bound_exceedances << "/" << s.total_runs << " exceedances (beta_hat " << s.beta_hat << ")";
    if (s.failed_runs > 0) {
        os << ", " << s.failed_runs << " failed runs";
    }
    if (s.beta_hat > 0.02) {
        os << ", flagged for review";
    }
    return {s.beta_hat <= 0.02 && s.failed_runs == 0, os.str()};
}

Outcome reproducibility() {
    const std::string serial = rows_to_csv(uc_run().rows);
    const std::string parallel = rows_to_csv(run_experiment(uc_config(), {4, false, false}).rows);
    return {serial == parallel, "serial vs 4-thread rows.csv: " + std::string(serial == parallel ? "byte-identical"
                                                                                                  : "different") +
                                    " (" + std::to_string(serial.size()) + " bytes)"};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "closed-form bound checks", 1.0, true, closed_form_bounds},
        {2, "root-function identities", 5.0, true, root_identities},
        {3, "UC solver oracle equivalence", 30.0, true, uc_oracle_equivalence},
        {4, "guarantee reproduction", 600.0, true, guarantee_reproduction},
        {5, "violation estimator calibration", 0.0, true, estimator_calibration},
        {6, "consistency-property suite", 60.0, true, consistency_suite},
        {7, "stationary pipeline properties", 0.0, true, stationary_properties},
        {8, "synthetic Monte Carlo (diagnostic)", 0.0, false, synthetic_diagnostic},
        {9, "reproducibility", 0.0, true, reproducibility},
    };

    int gating_failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.body();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool pass = out.pass;
        if (c.time_limit_s > 0.0 && secs >= c.time_limit_s) {
            pass = false;
            out.detail += ", over the " + fmt("%.0f", c.time_limit_s) + " s limit";
        }
        const char* tag = pass ? "PASS" : (c.gating ? "FAIL" : "REVIEW");
        std::printf("[%s] criterion %d: %s (%.2f s): %s\n", tag, c.id, c.title, secs, out.detail.c_str());
        std::fflush(stdout);
        if (!pass && c.gating) {
            ++gating_failures;
        }
    }
    std::printf("%d gating criteria failed\n", gating_failures);
    return gating_failures == 0 ? 0 : 1;
}
