#include "scenario/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace scenario {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t SplitMix64::mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() noexcept {
    state_ += kGolden;
    return mix(state_);
}

double SplitMix64::next_unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

ScenarioDistribution ScenarioDistribution::uniform(double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw InvalidArgument("uniform distribution requires finite lo < hi");
    }
    return ScenarioDistribution(DistributionKind::uniform, lo, hi);
}

double ScenarioDistribution::cdf_below(double value) const noexcept {
    return std::clamp((value - lo_) / (hi_ - lo_), 0.0, 1.0);
}

double ScenarioDistribution::tail_above(double value) const noexcept {
    return std::clamp((hi_ - value) / (hi_ - lo_), 0.0, 1.0);
}

double ScenarioDistribution::draw(SplitMix64& rng) const noexcept {
    return lo_ + (hi_ - lo_) * rng.next_unit();
}

MultiSample::MultiSample(std::vector<double> thetas) : thetas_(std::move(thetas)) {
    if (thetas_.empty()) {
        throw InvalidArgument("a multisample needs at least one scenario");
    }
}

double MultiSample::min() const noexcept { return *std::min_element(thetas_.begin(), thetas_.end()); }

double MultiSample::max() const noexcept { return *std::max_element(thetas_.begin(), thetas_.end()); }

MultiSample MultiSample::subset(std::span<const std::size_t> indices) const {
    std::vector<double> out;
    out.reserve(indices.size());
    for (std::size_t i : indices) {
        if (i >= thetas_.size()) {
            throw InvalidArgument("subset index " + std::to_string(i) + " out of range");
        }
        out.push_back(thetas_[i]);
    }
    return MultiSample(std::move(out));
}

MultiSample MultiSample::extended(std::span<const double> extra) const {
    std::vector<double> out = thetas_;
    out.insert(out.end(), extra.begin(), extra.end());
    return MultiSample(std::move(out));
}

nlohmann::json ScenarioProblem::point_to_json(const EquilibriumPoint& point) const {
    return nlohmann::json{{"x", point.x}, {"y", point.y}};
}

void ScenarioProblem::require_dims(const EquilibriumPoint& point) const {
    const Dims d = dims();
    if (point.x.size() != d.p || point.y.size() != d.q) {
        throw InvalidArgument("point dimensions (" + std::to_string(point.x.size()) + ", " +
                              std::to_string(point.y.size()) + ") do not match problem dimensions (" +
                              std::to_string(d.p) + ", " + std::to_string(d.q) + ")");
    }
}

MultiSample sample_multisample(const ScenarioDistribution& dist, std::size_t m, std::uint64_t seed) {
    if (m == 0) {
        throw InvalidArgument("sample_multisample: m must be at least 1");
    }
    SplitMix64 rng(seed);
    std::vector<double> thetas(m);
    for (double& t : thetas) {
        t = dist.draw(rng);
    }
    return MultiSample(std::move(thetas));
}

std::uint64_t derive_seed(std::uint64_t master, std::span<const std::uint64_t> stream_tags) noexcept {
    std::uint64_t h = SplitMix64::mix(master);
    for (std::uint64_t tag : stream_tags) {
        h = SplitMix64::mix(h + kGolden + SplitMix64::mix(tag ^ kGolden));
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> stream_tags) noexcept {
    return derive_seed(master, std::span<const std::uint64_t>(stream_tags.begin(), stream_tags.size()));
}

std::size_t membership_count(const ScenarioProblem& problem, const EquilibriumPoint& point,
                             const MultiSample& samples) {
    problem.require_dims(point);
    std::size_t count = 0;
    for (double theta : samples.thetas()) {
        if (problem.membership(theta, point)) {
            ++count;
        }
    }
    return count;
}

double sup_norm(std::span<const double> v) noexcept {
    double best = 0.0;
    for (double e : v) {
        best = std::max(best, std::abs(e));
    }
    return best;
}

double sup_distance(std::span<const double> a, std::span<const double> b) noexcept {
    if (a.size() != b.size()) {
        return std::numeric_limits<double>::infinity();
    }
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        best = std::max(best, std::abs(a[i] - b[i]));
    }
    return best;
}

}  // namespace scenario
