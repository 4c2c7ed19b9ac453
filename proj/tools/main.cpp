// scenario_cli: bound tables, solver output, complexity, Monte Carlo runs,
// consistency checks and the stationary pipeline from the command line.
// stdout carries only CSV or JSON; diagnostics go to stderr.
//
// Exit codes: 0 success, 1 domain error (or failed consistency check),
// 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "scenario/bounds.hpp"
#include "scenario/complexity.hpp"
#include "scenario/consistency.hpp"
#include "scenario/core.hpp"
#include "scenario/experiment.hpp"
#include "scenario/io.hpp"
#include "scenario/synthetic.hpp"

namespace {

using scenario::format_real;

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

std::string bound_csv(const scenario::BoundTable& table) {
    std::string out = "k,t,g\n";
    for (std::size_t k = 0; k <= table.m; ++k) {
        out += std::to_string(k) + ',' + (k < table.m ? format_real(table.t[k]) : std::string{}) + ',' +
               format_real(table.g[k]) + '\n';
    }
    return out;
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

struct SolveFlags {
    std::string problem;
    std::size_t m = 0;
    std::uint64_t seed = 0;
};

void add_problem_flags(CLI::App* cmd, SolveFlags& f) {
    cmd->add_option("--problem", f.problem, "unit_commitment or synthetic")
        ->required()
        ->check(CLI::IsMember({"unit_commitment", "synthetic"}));
    cmd->add_option("--m", f.m, "number of scenarios")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "sampling seed")->required()->envname("SCENARIO_SEED");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Probabilistic robustness certificates for scenario minimax problems"};
    app.require_subcommand(1);

    // bound
    auto* bound = app.add_subcommand("bound", "certificate table g(k) as CSV, or a single g(k)");
    std::size_t bound_m = 0;
    double bound_beta = 0.0;
    std::optional<std::size_t> bound_k;
    std::string bound_out;
    double bound_tol = scenario::kDefaultBracketTol;
    bound->add_option("--m", bound_m, "number of scenarios")->required()->check(CLI::PositiveNumber);
    bound->add_option("--beta", bound_beta, "confidence parameter in (0,1)")->required();
    bound->add_option("--k", bound_k, "print only g(k)");
    bound->add_option("--out", bound_out, "write the CSV table to this file");
    bound->add_option("--tol", bound_tol, "bisection bracket width");

    // solve / complexity
    auto* solve = app.add_subcommand("solve", "sample a multisample and print the solver output as JSON");
    SolveFlags solve_flags;
    add_problem_flags(solve, solve_flags);

    auto* complexity = app.add_subcommand("complexity", "greedy support sublist of a sampled multisample");
    SolveFlags cx_flags;
    bool cx_csv = false;
    add_problem_flags(complexity, cx_flags);
    complexity->add_flag("--csv", cx_csv, "print s_star,index,theta rows instead of JSON");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "run the Monte Carlo experiment from a JSON config");
    std::string config_path;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    bool no_timing = false;
    bool progress = false;
    experiment->add_option("--config", config_path, "experiment config (JSON)")->required();
    experiment->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    experiment->add_flag("--no-timing", no_timing, "write wall_time_ms as 0 so rows.csv is reproducible");
    experiment->add_flag("--progress", progress, "repetition counter on stderr");

    // check-consistency
    auto* consistency = app.add_subcommand("check-consistency", "empirical consistency-property check");
    std::string cc_problem;
    std::size_t cc_trials = 0;
    std::uint64_t cc_seed = 0;
    consistency->add_option("--problem", cc_problem)
        ->required()
        ->check(CLI::IsMember({"unit_commitment", "synthetic"}));
    consistency->add_option("--trials", cc_trials)->required()->check(CLI::PositiveNumber);
    consistency->add_option("--seed", cc_seed)->required()->envname("SCENARIO_SEED");

    // stationary
    auto* stationary = app.add_subcommand("stationary", "epsilon-stationary point of the synthetic game");
    std::size_t st_m = 0;
    std::uint64_t st_seed = 0;
    double st_beta = 0.01;
    scenario::GDAParams gda;
    scenario::SyntheticInstance syn;
    stationary->add_option("--m", st_m)->required()->check(CLI::PositiveNumber);
    stationary->add_option("--seed", st_seed)->required()->envname("SCENARIO_SEED");
    stationary->add_option("--starts", gda.n_starts, "seeded starts besides the box center")
        ->check(CLI::PositiveNumber);
    stationary->add_option("--beta", st_beta, "confidence parameter for the reported bound");
    stationary->add_option("--step-x", gda.step_x);
    stationary->add_option("--step-y", gda.step_y);
    stationary->add_option("--max-iters", gda.max_iters);
    stationary->add_option("--tol", gda.residual_tol, "residual stopping tolerance");
    stationary->add_option("--p", syn.p)->check(CLI::PositiveNumber);
    stationary->add_option("--q", syn.q)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (bound->parsed()) {
            if (bound_k && *bound_k > bound_m) {
                std::cerr << "error: --k must not exceed --m\n";
                return kExitUsage;
            }
            const scenario::BoundTable table = scenario::bound_table(bound_m, bound_beta, bound_tol);
            if (bound_k) {
                std::cout << format_real(table.g[*bound_k]) << '\n';
            } else if (!bound_out.empty()) {
                std::ofstream out(bound_out, std::ios::binary);
                if (!out || !(out << bound_csv(table))) {
                    std::cerr << "error: cannot write " << bound_out << '\n';
                    return kExitDomain;
                }
            } else {
                std::cout << bound_csv(table);
            }
            return 0;
        }

        if (solve->parsed()) {
            const auto problem =
                scenario::make_problem(scenario::parse_problem_kind(solve_flags.problem), solve_flags.seed);
            const auto samples = scenario::sample_multisample(problem->distribution(), solve_flags.m, solve_flags.seed);
            const auto point = problem->solve(samples);
            nlohmann::json j{{"problem", solve_flags.problem},
                             {"m", solve_flags.m},
                             {"seed", solve_flags.seed},
                             {"thetas", std::vector<double>(samples.thetas().begin(), samples.thetas().end())},
                             {"point", problem->point_to_json(point)},
                             {"payoff", problem->payoff(point.x, point.y)}};
            if (const auto v = problem->exact_violation(point)) {
                j["exact_violation"] = *v;
            }
            print_json(j);
            return 0;
        }

        if (complexity->parsed()) {
            const auto problem =
                scenario::make_problem(scenario::parse_problem_kind(cx_flags.problem), cx_flags.seed);
            const auto samples = scenario::sample_multisample(problem->distribution(), cx_flags.m, cx_flags.seed);
            const auto cx = scenario::greedy_support_sublist(*problem, samples);
            if (cx_csv) {
                std::cout << "s_star,index,theta\n";
                for (std::size_t i : cx.kept_indices) {
                    std::cout << cx.s_star << ',' << i << ',' << format_real(samples[i]) << '\n';
                }
            } else {
                std::vector<double> kept;
                for (std::size_t i : cx.kept_indices) {
                    kept.push_back(samples[i]);
                }
                print_json({{"s_star", cx.s_star}, {"kept_indices", cx.kept_indices}, {"kept_thetas", kept}});
            }
            return 0;
        }

        if (experiment->parsed()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "error: cannot read " << config_path << '\n';
                return kExitUsage;
            }
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                std::cerr << "error: malformed config: " << e.what() << '\n';
                return kExitUsage;
            }
            scenario::ExperimentConfig cfg;
            try {
                cfg = scenario::ExperimentConfig::from_json(j);
            } catch (const scenario::InvalidArgument& e) {
                std::cerr << "error: " << e.what() << '\n';
                return kExitUsage;
            }
            const auto result = scenario::run_experiment(cfg, {threads, !no_timing, progress});
            scenario::emit_outputs(result.rows, result.summary, cfg);
            print_json(result.summary.to_json());
            return 0;
        }

        if (consistency->parsed()) {
            const auto problem = scenario::make_problem(scenario::parse_problem_kind(cc_problem), cc_seed);
            const auto report = scenario::check_consistency(*problem, cc_trials, cc_seed);
            print_json(report.to_json());
            return report.ok() ? 0 : kExitDomain;
        }

        if (stationary->parsed()) {
            const scenario::SyntheticProblem problem(syn, gda, st_seed);
            const auto samples = scenario::sample_multisample(problem.distribution(), st_m, st_seed);
            const auto result = problem.solve_stationary(samples);
            const auto cx = scenario::greedy_support_sublist(problem, samples);
            const auto table = scenario::bound_table(st_m, st_beta);
            print_json({{"residual", result.residual},
                        {"iterations", result.iterations},
                        {"start_index", result.start_index},
                        {"point", problem.point_to_json(result.point)},
                        {"s_star", cx.s_star},
                        {"bound", table.g[cx.s_star]},
                        {"exact_violation", *problem.exact_violation(result.point)}});
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitUsage;
}
