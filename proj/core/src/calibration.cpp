#include "confdist/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "confdist/errors.hpp"
#include "confdist/quadrature.hpp"
#include "confdist/specfun.hpp"

namespace confdist::calibration {
namespace {

using specfun::noncentral_chisq2_cdf;

constexpr double kQuadratureTolerance = 1e-10;
constexpr double kTruncationMass = 1e-12;
constexpr int kMaxBracketDoublings = 64;

// Runs body(i) for i in [0, n) on contiguous blocks. Callers write into
// index-addressed slots, so the worker count cannot change any result.
template <typename Body>
void for_each_index(std::uint64_t n, unsigned threads, Body&& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t workers = std::min<std::uint64_t>(threads, n);
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::uint64_t block = (n + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t begin = w * block;
        const std::uint64_t end = std::min(n, begin + block);
        pool.emplace_back([&body, begin, end] {
            for (std::uint64_t i = begin; i < end; ++i) body(i);
        });
    }
}

// Upper end of a bracket on which a monotone g reaches target, by doubling.
template <typename Reached>
double expand_bracket(double start, Reached&& reached) {
    double hi = start;
    for (int i = 0; !reached(hi); ++i) {
        if (i == kMaxBracketDoublings) throw BracketError("calibration: could not bracket root");
        hi *= 2.0;
    }
    return hi;
}

// Density of a noncentral chi-squared(2) with noncentrality lambda,
// written with the scaled Bessel function so large arguments stay finite.
double chisq2_density(double z, double lambda) {
    const double d = std::sqrt(z) - std::sqrt(lambda);
    return 0.5 * std::exp(-0.5 * d * d) * specfun::bessel_i0_scaled(std::sqrt(lambda * z));
}

struct ReplicateValues {
    double noncol_bayes;
    double noncol_cd;
};

ReplicateValues evaluate_replicate(const Scenario& scenario, std::uint64_t seed, std::uint64_t lane,
                                   std::uint64_t index) {
    auto rng = random::replicate_stream(seed, lane, index);
    const Observation obs = draw_observation(scenario, rng);
    const Distance radius(scenario.radius().value());
    return {1.0 - inference::bayes_cdf(obs, radius), inference::noncollision_pvalue(obs, scenario.radius())};
}

}  // namespace

Scenario::Scenario(Distance delta_true, double sigma, CollisionRadius radius)
    : delta_true_(delta_true), sigma_(sigma), radius_(radius) {
    if (!std::isfinite(sigma) || sigma <= 0.0) {
        throw DomainError("scenario sigma must be finite and > 0, got " + std::to_string(sigma));
    }
}

void SweepConfig::validate() const {
    if (sigma_grid.empty()) throw InputError("sigma_grid: must not be empty");
    for (std::size_t i = 0; i < sigma_grid.size(); ++i) {
        if (!std::isfinite(sigma_grid[i]) || sigma_grid[i] <= 0.0) {
            throw InputError("sigma_grid: values must be finite and > 0");
        }
        if (i > 0 && !(sigma_grid[i] > sigma_grid[i - 1])) {
            throw InputError("sigma_grid: values must be strictly increasing");
        }
    }
    if (n_reps < 1) throw InputError("n_reps: must be >= 1");
    if (!(threshold > 0.0 && threshold < 1.0)) throw InputError("threshold: must lie in (0, 1)");
}

double PitSummary::ks_critical_1pct() const { return 1.63 / std::sqrt(static_cast<double>(n)); }

double binomial_std_error(double p, std::uint64_t n) {
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

double ks_uniform_statistic(std::vector<double>& sample) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double u = sample[i];
        d = std::max({d, static_cast<double>(i + 1) / n - u, u - static_cast<double>(i) / n});
    }
    return d;
}

Observation draw_observation(const Scenario& scenario, random::SplitMix64& rng) {
    const auto [z1, z2] = random::standard_normal_pair(rng);
    const double sigma = scenario.sigma();
    return Observation::from_pair(scenario.delta_true().value() + sigma * z1, sigma * z2, sigma);
}

NoncollisionSummary exact_row(const Scenario& scenario, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) throw InputError("threshold: must lie in (0, 1)");
    const double sigma = scenario.sigma();
    const double rho = std::pow(scenario.radius().value() / sigma, 2);
    const double lambda = std::pow(scenario.delta_true().value() / sigma, 2);

    // Z = ||Y||²/σ² ~ chi2_2(lambda); integrate over all but 1e-12 of its mass.
    const auto z_cdf = [lambda](double z) { return noncentral_chisq2_cdf(z, lambda); };
    const double z_hi = expand_bracket(lambda + 2.0 + 10.0 * std::sqrt(lambda + 1.0),
                                       [&](double z) { return z_cdf(z) >= 1.0 - kTruncationMass; });
    const double z_max = specfun::invert_monotone(z_cdf, 1.0 - kTruncationMass, 0.0, z_hi);

    NoncollisionSummary out;
    out.mean_bayes = quadrature::integrate(
                         [&](double z) {
                             return (1.0 - noncentral_chisq2_cdf(rho, z)) * chisq2_density(z, lambda);
                         },
                         0.0, z_max, kQuadratureTolerance)
                         .value;
    out.mean_cd = quadrature::integrate(
                      [&](double z) { return noncentral_chisq2_cdf(z, rho) * chisq2_density(z, lambda); }, 0.0,
                      z_max, kQuadratureTolerance)
                      .value;

    // 1 - B(R|y) = 1 - Γ₂(rho, Z) exceeds t iff Z > nu*, with Γ₂(rho, nu*) = 1 - t.
    // Γ₂(rho, ·) decreases from Γ₂(rho, 0); if that is already below 1 - t every Z qualifies.
    const double bayes_level = 1.0 - threshold;
    if (noncentral_chisq2_cdf(rho, 0.0) <= bayes_level) {
        out.freq_bayes = 1.0;
    } else {
        const auto negated = [rho](double nu) { return -noncentral_chisq2_cdf(rho, nu); };
        const double nu_hi = expand_bracket(rho + 10.0, [&](double nu) { return negated(nu) >= -bayes_level; });
        const double nu_star = specfun::invert_monotone(negated, -bayes_level, 0.0, nu_hi);
        out.freq_bayes = 1.0 - noncentral_chisq2_cdf(nu_star, lambda);
    }

    // 1 - C(R|y) = Γ₂(Z, rho) exceeds t iff Z > z*, with Γ₂(z*, rho) = t.
    const auto cd_noncol = [rho](double z) { return noncentral_chisq2_cdf(z, rho); };
    const double zc_hi = expand_bracket(rho + 10.0, [&](double z) { return cd_noncol(z) >= threshold; });
    const double z_star = specfun::invert_monotone(cd_noncol, threshold, 0.0, zc_hi);
    out.freq_cd = 1.0 - noncentral_chisq2_cdf(z_star, lambda);
    return out;
}

std::vector<CalibrationRow> run_sweep(const SweepBase& base, const SweepConfig& config) {
    config.validate();
    std::vector<CalibrationRow> rows;
    rows.reserve(config.sigma_grid.size());
    std::vector<ReplicateValues> values(config.n_reps);
    const double n = static_cast<double>(config.n_reps);

    for (std::size_t lane = 0; lane < config.sigma_grid.size(); ++lane) {
        const Scenario scenario(base.delta_true, config.sigma_grid[lane], base.radius);
        for_each_index(config.n_reps, config.threads, [&](std::uint64_t i) {
            values[i] = evaluate_replicate(scenario, config.seed, lane, i);
        });

        // Fixed-order reduction.
        double sum_b = 0.0, sum_c = 0.0;
        std::uint64_t high_b = 0, high_c = 0;
        for (const auto& v : values) {
            sum_b += v.noncol_bayes;
            sum_c += v.noncol_cd;
            high_b += v.noncol_bayes > config.threshold ? 1 : 0;
            high_c += v.noncol_cd > config.threshold ? 1 : 0;
        }
        CalibrationRow row;
        row.sigma = scenario.sigma();
        row.mc.mean_bayes = sum_b / n;
        row.mc.mean_cd = sum_c / n;
        row.mc.freq_bayes = static_cast<double>(high_b) / n;
        row.mc.freq_cd = static_cast<double>(high_c) / n;

        double ss_b = 0.0, ss_c = 0.0;
        for (const auto& v : values) {
            ss_b += (v.noncol_bayes - row.mc.mean_bayes) * (v.noncol_bayes - row.mc.mean_bayes);
            ss_c += (v.noncol_cd - row.mc.mean_cd) * (v.noncol_cd - row.mc.mean_cd);
        }
        if (config.n_reps > 1) {
            row.stderr_mean_bayes = std::sqrt(ss_b / (n - 1.0) / n);
            row.stderr_mean_cd = std::sqrt(ss_c / (n - 1.0) / n);
        }
        row.exact = exact_row(scenario, config.threshold);
        rows.push_back(row);
    }
    return rows;
}

PitSummary pit_sample(const Scenario& scenario, std::uint64_t n, std::uint64_t seed, unsigned threads) {
    if (n < 100) throw InputError("n: PIT sample needs at least 100 draws");
    std::vector<double> u(n);
    for_each_index(n, threads, [&](std::uint64_t i) {
        u[i] = evaluate_replicate(scenario, seed, random::kPitLane, i).noncol_cd;
    });

    PitSummary summary;
    summary.n = n;
    double sum = 0.0;
    for (const double v : u) {
        sum += v;
        const auto bin = std::min<std::size_t>(kPitBins - 1, static_cast<std::size_t>(v * kPitBins));
        ++summary.histogram[bin];
    }
    summary.mean = sum / static_cast<double>(n);
    summary.ks_stat = ks_uniform_statistic(u);
    return summary;
}

}  // namespace confdist::calibration
