#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "confdist/inference.hpp"
#include "confdist/random.hpp"

namespace confdist::calibration {

using inference::CollisionRadius;
using inference::Distance;
using inference::Observation;

/// Ground truth for simulation: true distance, noise level and collision radius.
class Scenario {
public:
    Scenario(Distance delta_true, double sigma, CollisionRadius radius);

    [[nodiscard]] Distance delta_true() const { return delta_true_; }
    [[nodiscard]] double sigma() const { return sigma_; }
    [[nodiscard]] CollisionRadius radius() const { return radius_; }

private:
    Distance delta_true_;
    double sigma_;
    CollisionRadius radius_;
};

/// A scenario with the noise level left open, as swept over a sigma grid.
struct SweepBase {
    Distance delta_true;
    CollisionRadius radius;
};

inline const std::vector<double> kDefaultSigmaGrid = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
inline constexpr double kDefaultThreshold = 0.95;

struct SweepConfig {
    std::vector<double> sigma_grid = kDefaultSigmaGrid;
    std::uint64_t n_reps = 100000;
    std::uint64_t seed = 0;
    double threshold = kDefaultThreshold;
    /// Worker threads for replicate evaluation; 0 picks the hardware count.
    /// Never affects results.
    unsigned threads = 0;

    /// Throws InputError naming the offending field.
    void validate() const;
};

/// Non-collision summaries of one method pair: means of 1 - B(R|y) and 1 - C(R|y),
/// and the frequencies with which each exceeds the threshold.
struct NoncollisionSummary {
    double mean_bayes = 0.0;
    double mean_cd = 0.0;
    double freq_bayes = 0.0;
    double freq_cd = 0.0;

    friend bool operator==(const NoncollisionSummary&, const NoncollisionSummary&) = default;
};

struct CalibrationRow {
    double sigma = 0.0;
    NoncollisionSummary mc;
    NoncollisionSummary exact;
    double stderr_mean_bayes = 0.0;
    double stderr_mean_cd = 0.0;

    friend bool operator==(const CalibrationRow&, const CalibrationRow&) = default;
};

inline constexpr std::size_t kPitBins = 20;

struct PitSummary {
    std::uint64_t n = 0;
    double ks_stat = 0.0;
    double mean = 0.0;
    std::array<std::uint64_t, kPitBins> histogram{};

    /// Asymptotic 1% Kolmogorov–Smirnov critical value, 1.63 / sqrt(n).
    [[nodiscard]] double ks_critical_1pct() const;
    [[nodiscard]] bool passes_1pct() const { return ks_stat < ks_critical_1pct(); }
};

/// y1 ~ N(delta_true, sigma²), y2 ~ N(0, sigma²): the truth sits at (delta_true, 0),
/// which loses nothing because every summary depends on y only through ||y||.
Observation draw_observation(const Scenario& scenario, random::SplitMix64& rng);

/// Exact non-collision summaries from the law of Z = ||Y||²/σ², a noncentral
/// chi-squared(2) with noncentrality delta_true²/σ². Means by adaptive quadrature,
/// frequencies by one root-find and one CDF evaluation each.
NoncollisionSummary exact_row(const Scenario& scenario, double threshold = kDefaultThreshold);

/// Monte Carlo summaries per sigma, each with its exact twin attached.
std::vector<CalibrationRow> run_sweep(const SweepBase& base, const SweepConfig& config);

/// Probability-integral-transform diagnostic of U = 1 - C(R|Y) over n >= 100 draws.
PitSummary pit_sample(const Scenario& scenario, std::uint64_t n, std::uint64_t seed, unsigned threads = 0);

/// sqrt(p (1 - p) / n)
double binomial_std_error(double p, std::uint64_t n);

/// Kolmogorov–Smirnov distance of a sample from Uniform(0, 1). Sorts in place.
double ks_uniform_statistic(std::vector<double>& sample);

}  // namespace confdist::calibration
