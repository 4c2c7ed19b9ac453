#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace scenario {

// Error taxonomy shared by every module. InvalidArgument maps to a domain
// error at the CLI boundary; NumericalFailure and Infeasible indicate that a
// computation could not produce a result for valid-looking input.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Infeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// SplitMix64 generator. The state advances by the golden-ratio increment
/// 0x9E3779B97F4A7C15 and each output goes through the Stafford "mix13"
/// finalizer (shifts 30/27/31, multipliers 0xBF58476D1CE4E5B9 and
/// 0x94D049BB133111EB). Streams are identical on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept;

    /// Uniform double in [0, 1) built from the top 53 bits of next().
    double next_unit() noexcept;

    static std::uint64_t mix(std::uint64_t z) noexcept;

private:
    std::uint64_t state_;
};

enum class DistributionKind { uniform };

/// Distribution of the scalar scenario parameter theta.
class ScenarioDistribution {
public:
    static ScenarioDistribution uniform(double lo, double hi);

    DistributionKind kind() const noexcept { return kind_; }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

    bool in_support(double theta) const noexcept { return theta >= lo_ && theta <= hi_; }

    /// P(theta < value).
    double cdf_below(double value) const noexcept;
    /// P(theta > value).
    double tail_above(double value) const noexcept;

    double draw(SplitMix64& rng) const noexcept;

private:
    ScenarioDistribution(DistributionKind kind, double lo, double hi) : kind_(kind), lo_(lo), hi_(hi) {}

    DistributionKind kind_;
    double lo_;
    double hi_;
};

/// Ordered i.i.d. draw theta_1..theta_M. Never empty; draw order is kept.
class MultiSample {
public:
    explicit MultiSample(std::vector<double> thetas);
    MultiSample(std::initializer_list<double> thetas) : MultiSample(std::vector<double>(thetas)) {}

    std::size_t size() const noexcept { return thetas_.size(); }
    double operator[](std::size_t i) const noexcept { return thetas_[i]; }
    std::span<const double> thetas() const noexcept { return thetas_; }

    double min() const noexcept;
    double max() const noexcept;

    /// Sub-multisample made of the given original indices, in the given order.
    MultiSample subset(std::span<const std::size_t> indices) const;

    /// Copy with extra scenarios appended at the end.
    MultiSample extended(std::span<const double> extra) const;

    friend bool operator==(const MultiSample&, const MultiSample&) = default;

private:
    std::vector<double> thetas_;
};

/// Candidate solution (x, y). The min-player's strategy is stored as a flat
/// vector; each problem documents its own layout.
struct EquilibriumPoint {
    std::vector<double> x;
    std::vector<double> y;

    friend bool operator==(const EquilibriumPoint&, const EquilibriumPoint&) = default;
};

struct Dims {
    std::size_t p = 0;
    std::size_t q = 0;
    friend bool operator==(const Dims&, const Dims&) = default;
};

/// Scenario minimax problem: min over x in X^M, max over y in Y^M of f(x, y),
/// with X^M, Y^M the intersections of the per-scenario sets.
class ScenarioProblem {
public:
    virtual ~ScenarioProblem() = default;

    virtual std::string_view name() const = 0;
    virtual Dims dims() const = 0;
    virtual const ScenarioDistribution& distribution() const = 0;

    /// Is point in X_theta x Y_theta.
    virtual bool membership(double theta, const EquilibriumPoint& point) const = 0;

    /// Deterministic solver map. Must depend only on the multiset of samples.
    virtual EquilibriumPoint solve(const MultiSample& samples) const = 0;

    virtual bool points_equal(const EquilibriumPoint& a, const EquilibriumPoint& b) const = 0;

    virtual double payoff(std::span<const double> x, std::span<const double> y) const = 0;

    /// Closed-form probability of violation, when the problem has one.
    virtual std::optional<double> exact_violation(const EquilibriumPoint&) const { return std::nullopt; }

    virtual nlohmann::json point_to_json(const EquilibriumPoint& point) const;

    /// Throws InvalidArgument unless the point has dimensions (p, q).
    void require_dims(const EquilibriumPoint& point) const;
};

/// m i.i.d. draws from dist under a fresh SplitMix64(seed) stream.
MultiSample sample_multisample(const ScenarioDistribution& dist, std::size_t m, std::uint64_t seed);

/// Folds each tag into the master seed with the SplitMix64 finalizer.
std::uint64_t derive_seed(std::uint64_t master, std::span<const std::uint64_t> stream_tags) noexcept;
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> stream_tags) noexcept;

std::size_t membership_count(const ScenarioProblem& problem, const EquilibriumPoint& point,
                             const MultiSample& samples);

double sup_norm(std::span<const double> v) noexcept;
double sup_distance(std::span<const double> a, std::span<const double> b) noexcept;

}  // namespace scenario
