#include "scenario/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "scenario/complexity.hpp"
#include "scenario/io.hpp"
#include "scenario/synthetic.hpp"
#include "scenario/unit_commitment.hpp"

namespace scenario {

std::string to_string(ProblemKind kind) {
    return kind == ProblemKind::unit_commitment ? "unit_commitment" : "synthetic";
}

std::string to_string(ViolationMode mode) {
    switch (mode) {
        case ViolationMode::empirical:
            return "empirical";
        case ViolationMode::exact:
            return "exact";
        case ViolationMode::both:
            return "both";
    }
    return "both";
}

ProblemKind parse_problem_kind(std::string_view name) {
    if (name == "unit_commitment") {
        return ProblemKind::unit_commitment;
    }
    if (name == "synthetic") {
        return ProblemKind::synthetic;
    }
    throw InvalidArgument("unknown problem '" + std::string(name) + "'");
}

ViolationMode parse_violation_mode(std::string_view name) {
    if (name == "empirical") {
        return ViolationMode::empirical;
    }
    if (name == "exact") {
        return ViolationMode::exact;
    }
    if (name == "both") {
        return ViolationMode::both;
    }
    throw InvalidArgument("unknown violation_mode '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// config

std::vector<std::size_t> ExperimentConfig::default_m_values() {
    std::vector<std::size_t> ms(100);
    for (std::size_t i = 0; i < ms.size(); ++i) {
        ms[i] = i + 1;
    }
    return ms;
}

void ExperimentConfig::validate() const {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw InvalidArgument("config: beta must lie in (0, 1)");
    }
    if (repetitions < 1) {
        throw InvalidArgument("config: repetitions must be at least 1");
    }
    if (n_test < 1) {
        throw InvalidArgument("config: n_test must be at least 1");
    }
    if (m_values.empty()) {
        throw InvalidArgument("config: m_values must not be empty");
    }
    std::set<std::size_t> seen;
    for (std::size_t m : m_values) {
        if (m < 1) {
            throw InvalidArgument("config: every m must be at least 1");
        }
        if (!seen.insert(m).second) {
            throw InvalidArgument("config: duplicate m " + std::to_string(m));
        }
    }
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw InvalidArgument("config: expected a JSON object");
    }
    static const std::set<std::string> known{"problem", "beta",        "m_values",       "repetitions",
                                             "n_test",  "master_seed", "violation_mode", "output_dir"};
    for (const auto& [key, _] : j.items()) {
        if (!known.contains(key)) {
            throw InvalidArgument("config: unknown field '" + key + "'");
        }
    }
    ExperimentConfig cfg;
    try {
        if (j.contains("problem")) {
            cfg.problem = parse_problem_kind(j.at("problem").get<std::string>());
        }
        if (j.contains("beta")) {
            cfg.beta = j.at("beta").get<double>();
        }
        if (j.contains("m_values")) {
            const auto& arr = j.at("m_values");
            if (!arr.is_array()) {
                throw InvalidArgument("config: m_values must be an array");
            }
            cfg.m_values.clear();
            for (const auto& v : arr) {
                if (!v.is_number_unsigned()) {
                    throw InvalidArgument("config: m_values entries must be positive integers");
                }
                cfg.m_values.push_back(v.get<std::size_t>());
            }
        }
        auto unsigned_field = [&](const char* key, auto& dst) {
            if (j.contains(key)) {
                if (!j.at(key).is_number_unsigned()) {
                    throw InvalidArgument(std::string("config: ") + key + " must be a non-negative integer");
                }
                dst = j.at(key).get<std::remove_reference_t<decltype(dst)>>();
            }
        };
        unsigned_field("repetitions", cfg.repetitions);
        unsigned_field("n_test", cfg.n_test);
        unsigned_field("master_seed", cfg.master_seed);
        if (j.contains("violation_mode")) {
            cfg.violation_mode = parse_violation_mode(j.at("violation_mode").get<std::string>());
        }
        if (j.contains("output_dir")) {
            cfg.output_dir = j.at("output_dir").get<std::string>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

nlohmann::json ExperimentConfig::to_json() const {
    return nlohmann::json{{"problem", to_string(problem)},
                          {"beta", beta},
                          {"m_values", m_values},
                          {"repetitions", repetitions},
                          {"n_test", n_test},
                          {"master_seed", master_seed},
                          {"violation_mode", to_string(violation_mode)},
                          {"output_dir", output_dir.string()}};
}

// ---------------------------------------------------------------------------
// rows

std::optional<double> ResultRow::gate_violation() const noexcept {
    return violation_exact ? violation_exact : violation_empirical;
}

std::optional<double> ResultRow::plotted_violation() const noexcept {
    return violation_empirical ? violation_empirical : violation_exact;
}

double estimate_violation(const ScenarioProblem& problem, const EquilibriumPoint& point,
                          const ScenarioDistribution& dist, std::size_t n_test, std::uint64_t seed) {
    if (n_test < 1) {
        throw InvalidArgument("estimate_violation: n_test must be at least 1");
    }
    problem.require_dims(point);
    SplitMix64 rng(seed);
    std::size_t misses = 0;
    for (std::size_t i = 0; i < n_test; ++i) {
        if (!problem.membership(dist.draw(rng), point)) {
            ++misses;
        }
    }
    return static_cast<double>(misses) / static_cast<double>(n_test);
}

std::unique_ptr<ScenarioProblem> make_problem(ProblemKind kind, std::uint64_t master_seed) {
    if (kind == ProblemKind::unit_commitment) {
        return std::make_unique<UnitCommitmentProblem>();
    }
    return std::make_unique<SyntheticProblem>(SyntheticInstance{}, GDAParams{}, master_seed);
}

// ---------------------------------------------------------------------------
// runner

Experiment::Experiment(ExperimentConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    problem_ = make_problem(cfg_.problem, cfg_.master_seed);
    for (std::size_t m : cfg_.m_values) {
        tables_.emplace(m, bound_table(m, cfg_.beta));
    }
}

const BoundTable& Experiment::table(std::size_t m) const {
    const auto it = tables_.find(m);
    if (it == tables_.end()) {
        throw InvalidArgument("m=" + std::to_string(m) + " is not part of the configuration");
    }
    return it->second;
}

ResultRow Experiment::run_repetition(std::size_t m, std::size_t rep, bool record_timing) const {
    if (rep >= cfg_.repetitions) {
        throw InvalidArgument("rep out of range");
    }
    const BoundTable& tbl = table(m);
    const auto started = std::chrono::steady_clock::now();

    ResultRow row;
    row.m = m;
    row.rep = rep;
    try {
        const std::uint64_t seed = derive_seed(cfg_.master_seed, {m, rep});
        const MultiSample samples = sample_multisample(problem_->distribution(), m, seed);
        const ComplexityResult cx = greedy_support_sublist(*problem_, samples);
        const EquilibriumPoint& point = cx.reference_point;

        row.s_star = cx.s_star;
        row.bound = tbl.g.at(cx.s_star);
        row.payoff = problem_->payoff(point.x, point.y);
        if (cfg_.violation_mode != ViolationMode::empirical) {
            row.violation_exact = problem_->exact_violation(point);
        }
        if (cfg_.violation_mode != ViolationMode::exact) {
            const std::uint64_t test_seed = derive_seed(cfg_.master_seed, {m, rep, 1});
            row.violation_empirical =
                estimate_violation(*problem_, point, problem_->distribution(), cfg_.n_test, test_seed);
        }
    } catch (const std::exception& e) {
        row = ResultRow{};
        row.m = m;
        row.rep = rep;
        row.error = e.what();
    }
    if (record_timing) {
        row.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    }
    return row;
}

ExperimentResult Experiment::run(const RunOptions& options) const {
    std::vector<std::size_t> ms = cfg_.m_values;
    std::sort(ms.begin(), ms.end());
    std::vector<std::pair<std::size_t, std::size_t>> tasks;
    tasks.reserve(ms.size() * cfg_.repetitions);
    for (std::size_t m : ms) {
        for (std::size_t rep = 0; rep < cfg_.repetitions; ++rep) {
            tasks.emplace_back(m, rep);
        }
    }

    ExperimentResult result;
    result.rows.resize(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex log_mutex;

    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
            result.rows[i] = run_repetition(tasks[i].first, tasks[i].second, options.record_timing);
            const std::size_t n = done.fetch_add(1) + 1;
            if (options.progress && (n % 1000 == 0 || n == tasks.size())) {
                std::lock_guard lock(log_mutex);
                std::cerr << "\r" << n << "/" << tasks.size() << " repetitions" << std::flush;
                if (n == tasks.size()) {
                    std::cerr << '\n';
                }
            }
        }
    };

    const unsigned threads = std::max(1u, options.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    result.summary = summarize(result.rows, cfg_);
    return result;
}

ResultRow run_repetition(const ExperimentConfig& cfg, std::size_t m, std::size_t rep) {
    ExperimentConfig single = cfg;
    single.m_values = {m};
    return Experiment(std::move(single)).run_repetition(m, rep);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
    return Experiment(cfg).run(options);
}

// ---------------------------------------------------------------------------
// aggregation

Summary summarize(const std::vector<ResultRow>& rows, const ExperimentConfig& cfg) {
    Summary s;
    std::vector<std::size_t> ms = cfg.m_values;
    std::sort(ms.begin(), ms.end());
    std::map<std::size_t, PerMSummary> by_m;
    std::map<std::size_t, double> v_sum;
    for (std::size_t m : ms) {
        by_m[m].m = m;
    }

    for (const ResultRow& row : rows) {
        if (row.failed()) {
            ++s.failed_runs;
            s.failures.push_back({row.m, row.rep, *row.error});
            continue;
        }
        ++s.total_runs;
        const auto gate = row.gate_violation();
        if (gate && row.bound && *gate > *row.bound) {
            ++s.bound_exceedances;
        }
        PerMSummary& pm = by_m[row.m];
        pm.m = row.m;
        ++pm.runs;
        if (row.bound) {
            pm.bound = pm.bound ? std::max(*pm.bound, *row.bound) : *row.bound;
        }
        if (row.s_star) {
            pm.s_star_min = pm.s_star_min ? std::min(*pm.s_star_min, *row.s_star) : *row.s_star;
            pm.s_star_max = pm.s_star_max ? std::max(*pm.s_star_max, *row.s_star) : *row.s_star;
        }
        if (const auto v = row.plotted_violation()) {
            v_sum[row.m] += *v;
            pm.v_min = pm.v_min ? std::min(*pm.v_min, *v) : *v;
            pm.v_max = pm.v_max ? std::max(*pm.v_max, *v) : *v;
        }
    }
    for (auto& [m, pm] : by_m) {
        if (pm.runs > 0 && pm.v_min) {
            pm.v_mean = v_sum[m] / static_cast<double>(pm.runs);
        }
        s.per_m.push_back(pm);
    }
    s.beta_hat = s.total_runs == 0 ? 0.0 : static_cast<double>(s.bound_exceedances) / static_cast<double>(s.total_runs);
    return s;
}

nlohmann::json Summary::to_json() const {
    auto opt = [](const auto& v) -> nlohmann::json { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    nlohmann::json per = nlohmann::json::array();
    for (const PerMSummary& pm : per_m) {
        per.push_back({{"m", pm.m},
                       {"bound", opt(pm.bound)},
                       {"v_mean", opt(pm.v_mean)},
                       {"v_min", opt(pm.v_min)},
                       {"v_max", opt(pm.v_max)},
                       {"s_star_min", opt(pm.s_star_min)},
                       {"s_star_max", opt(pm.s_star_max)},
                       {"runs", pm.runs}});
    }
    nlohmann::json fails = nlohmann::json::array();
    for (const RowFailure& f : failures) {
        fails.push_back({{"m", f.m}, {"rep", f.rep}, {"error", f.error}});
    }
    return nlohmann::json{{"per_m", per},
                          {"total_runs", total_runs},
                          {"failed_runs", failed_runs},
                          {"bound_exceedances", bound_exceedances},
                          {"beta_hat", beta_hat},
                          {"failures", fails}};
}

// ---------------------------------------------------------------------------
// serialization

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
    std::string out = kRowsHeader;
    out += '\n';
    for (const ResultRow& r : rows) {
        out += std::to_string(r.m);
        out += ',';
        out += std::to_string(r.rep);
        out += ',';
        out += r.s_star ? std::to_string(*r.s_star) : std::string{};
        out += ',';
        out += format_optional(r.bound);
        out += ',';
        out += format_optional(r.violation_exact);
        out += ',';
        out += format_optional(r.violation_empirical);
        out += ',';
        out += format_optional(r.payoff);
        out += ',';
        out += format_real(r.wall_time_ms);
        out += '\n';
    }
    return out;
}

std::string figure_to_csv(const Summary& summary) {
    std::string out = kFigureHeader;
    out += '\n';
    for (const PerMSummary& pm : summary.per_m) {
        out += std::to_string(pm.m);
        for (const auto& v : {pm.bound, pm.v_mean, pm.v_min, pm.v_max}) {
            out += ',';
            out += format_optional(v);
        }
        out += '\n';
    }
    return out;
}

std::vector<ResultRow> rows_from_csv(std::string_view text) {
    std::vector<ResultRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line) != split_csv_line(kRowsHeader)) {
        throw InvalidArgument("rows.csv: unexpected header");
    }
    auto opt_real = [](const std::string& f) -> std::optional<double> {
        if (f.empty()) {
            return std::nullopt;
        }
        return parse_real(f);
    };
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != 8) {
            throw InvalidArgument("rows.csv: expected 8 fields, got " + std::to_string(f.size()));
        }
        ResultRow r;
        r.m = static_cast<std::size_t>(parse_integer(f[0]));
        r.rep = static_cast<std::size_t>(parse_integer(f[1]));
        if (f[2].empty()) {
            r.error = "failed";
        } else {
            r.s_star = static_cast<std::size_t>(parse_integer(f[2]));
        }
        r.bound = opt_real(f[3]);
        r.violation_exact = opt_real(f[4]);
        r.violation_empirical = opt_real(f[5]);
        r.payoff = opt_real(f[6]);
        r.wall_time_ms = parse_real(f[7]);
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << content;
    out.flush();
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

}  // namespace

void emit_outputs(const std::vector<ResultRow>& rows, const Summary& summary, const ExperimentConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory " + cfg.output_dir.string() + ": " + ec.message());
    }
    write_file(cfg.output_dir / "rows.csv", rows_to_csv(rows));
    write_file(cfg.output_dir / "figure1.csv", figure_to_csv(summary));
    write_file(cfg.output_dir / "summary.json", summary.to_json().dump(2) + "\n");
}

}  // namespace scenario
