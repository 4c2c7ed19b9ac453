#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scenario/bounds.hpp"
#include "scenario/core.hpp"

namespace scenario {

enum class ProblemKind { unit_commitment, synthetic };
enum class ViolationMode { empirical, exact, both };

std::string to_string(ProblemKind kind);
std::string to_string(ViolationMode mode);
ProblemKind parse_problem_kind(std::string_view name);
ViolationMode parse_violation_mode(std::string_view name);

/// Monte Carlo configuration. JSON form uses exactly these field names;
/// missing fields take the defaults below and unknown fields are rejected.
struct ExperimentConfig {
    ProblemKind problem = ProblemKind::unit_commitment;
    double beta = 0.01;
    std::vector<std::size_t> m_values = default_m_values();
    std::size_t repetitions = 200;
    std::size_t n_test = 10000;
    std::uint64_t master_seed = 1;
    ViolationMode violation_mode = ViolationMode::both;
    std::filesystem::path output_dir = "out";

    static std::vector<std::size_t> default_m_values();  // 1..100
    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    void validate() const;
};

/// One (m, rep) record. A failed repetition keeps m, rep and the error tag
/// and leaves the numeric fields empty.
struct ResultRow {
    std::size_t m = 0;
    std::size_t rep = 0;
    std::optional<std::size_t> s_star;
    std::optional<double> bound;
    std::optional<double> violation_exact;
    std::optional<double> violation_empirical;
    std::optional<double> payoff;
    double wall_time_ms = 0.0;
    std::optional<std::string> error;

    bool failed() const noexcept { return error.has_value(); }
    /// Exact violation when present, else empirical (used for exceedances).
    std::optional<double> gate_violation() const noexcept;
    /// Empirical violation when present, else exact (used for the figure).
    std::optional<double> plotted_violation() const noexcept;
};

struct PerMSummary {
    std::size_t m = 0;
    std::optional<double> bound;  // max over successful repetitions
    std::optional<double> v_mean;
    std::optional<double> v_min;
    std::optional<double> v_max;
    std::optional<std::size_t> s_star_min;
    std::optional<std::size_t> s_star_max;
    std::size_t runs = 0;
};

struct RowFailure {
    std::size_t m = 0;
    std::size_t rep = 0;
    std::string error;
};

struct Summary {
    std::vector<PerMSummary> per_m;
    std::size_t total_runs = 0;  // successful repetitions
    std::size_t failed_runs = 0;
    std::size_t bound_exceedances = 0;
    double beta_hat = 0.0;
    std::vector<RowFailure> failures;

    nlohmann::json to_json() const;
};

/// Fraction of n_test fresh draws (SplitMix64(seed) stream) for which the
/// point is not a member.
double estimate_violation(const ScenarioProblem& problem, const EquilibriumPoint& point,
                          const ScenarioDistribution& dist, std::size_t n_test, std::uint64_t seed);

/// Problem instance used by an experiment of the given kind. The synthetic
/// solver map is seeded from master_seed and is the same for every repetition.
std::unique_ptr<ScenarioProblem> make_problem(ProblemKind kind, std::uint64_t master_seed);

struct RunOptions {
    unsigned threads = 1;
    bool record_timing = true;
    bool progress = false;  // counter on stderr
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    Summary summary;
};

/// Holds the problem and the per-m bound tables for one configuration.
class Experiment {
public:
    explicit Experiment(ExperimentConfig cfg);

    const ExperimentConfig& config() const noexcept { return cfg_; }
    const ScenarioProblem& problem() const noexcept { return *problem_; }
    const BoundTable& table(std::size_t m) const;

    ResultRow run_repetition(std::size_t m, std::size_t rep, bool record_timing = true) const;
    ExperimentResult run(const RunOptions& options = {}) const;

private:
    ExperimentConfig cfg_;
    std::unique_ptr<ScenarioProblem> problem_;
    std::map<std::size_t, BoundTable> tables_;
};

ResultRow run_repetition(const ExperimentConfig& cfg, std::size_t m, std::size_t rep);
ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options = {});

/// Aggregates rows (sorted by (m, rep)) into the figure data and the
/// exceedance count.
Summary summarize(const std::vector<ResultRow>& rows, const ExperimentConfig& cfg);

inline constexpr const char* kRowsHeader =
    "m,rep,s_star,bound,violation_exact,violation_empirical,payoff,wall_time_ms";
inline constexpr const char* kFigureHeader = "m,bound,v_mean,v_min,v_max";

std::string rows_to_csv(const std::vector<ResultRow>& rows);
std::string figure_to_csv(const Summary& summary);
std::vector<ResultRow> rows_from_csv(std::string_view text);

/// Writes rows.csv, figure1.csv and summary.json into cfg.output_dir
/// (created if missing). Throws std::runtime_error on I/O failure.
void emit_outputs(const std::vector<ResultRow>& rows, const Summary& summary, const ExperimentConfig& cfg);

}  // namespace scenario
