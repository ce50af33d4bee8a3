#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace confdist::inference {

/// A length between the two objects; nonnegative and finite.
class Distance {
public:
    constexpr Distance() = default;
    explicit Distance(double delta);
    [[nodiscard]] constexpr double value() const { return delta_; }
    friend constexpr auto operator<=>(const Distance&, const Distance&) = default;

private:
    double delta_ = 0.0;
};

/// Combined hard-body radius; a distance below it means collision.
class CollisionRadius {
public:
    explicit CollisionRadius(double radius);
    [[nodiscard]] constexpr double value() const { return radius_; }

private:
    double radius_;
};

/// One observed displacement y = (y1, y2) with known per-axis noise sigma.
/// Only the norm enters any computation; the pair form is kept for simulation
/// and reporting.
class Observation {
public:
    static Observation from_pair(double y1, double y2, double sigma);
    static Observation from_norm(double norm, double sigma);

    [[nodiscard]] double y1() const { return y1_; }
    [[nodiscard]] double y2() const { return y2_; }
    [[nodiscard]] double sigma() const { return sigma_; }
    [[nodiscard]] double norm() const { return norm_; }
    /// ||y||^2 / sigma^2, the observed noncentral chi-squared statistic.
    [[nodiscard]] double standardized_norm_sq() const;

private:
    Observation(double y1, double y2, double norm, double sigma);
    double y1_;
    double y2_;
    double norm_;
    double sigma_;
};

enum class Method { bayes, cd };

std::string_view to_string(Method method);

struct Median {
    Distance value;
    /// The CD's atom at zero already carries at least half the confidence.
    bool at_boundary = false;
};

struct Interval {
    Distance lo;
    Distance hi;
    bool lo_clipped = false;
    bool hi_clipped = false;
};

struct CurveTable {
    std::vector<double> grid;
    std::vector<double> b;
    std::vector<double> c;
    std::vector<double> cc;
    std::vector<double> cred;

    [[nodiscard]] std::size_t size() const { return grid.size(); }
};

/// Flat-prior posterior cumulative for the distance: Γ₂(δ²/σ², ||y||²/σ²).
double bayes_cdf(const Observation& obs, Distance delta);

/// Confidence distribution for the distance: 1 - Γ₂(||y||²/σ², δ²/σ²).
/// Positive at δ = 0: C(0|y) = exp(-||y||²/(2σ²)).
double cd_cdf(const Observation& obs, Distance delta);

double cdf(const Observation& obs, Method method, Distance delta);

/// |1 - 2 C(δ|y)|
double confidence_curve(const Observation& obs, Distance delta);

/// |1 - 2 B(δ|y)|
double credibility_curve(const Observation& obs, Distance delta);

/// Point where the chosen cumulative crosses 1/2. For the CD, returns zero
/// flagged as boundary when C(0|y) >= 1/2.
Median median(const Observation& obs, Method method);

/// Equal-tailed interval read off the level set of the curve at `level`,
/// with 0 < level < 1. Endpoints below the CD atom are clipped to zero.
Interval level_interval(const Observation& obs, Method method, double level);

/// Confidence in collision, C(R|y).
double collision_confidence(const Observation& obs, CollisionRadius radius);

/// p-value for the null hypothesis of no collision, 1 - C(R|y).
double noncollision_pvalue(const Observation& obs, CollisionRadius radius);

/// B, C and both curves on a strictly increasing nonnegative grid.
/// Throws InputError otherwise.
CurveTable tabulate_curves(const Observation& obs, std::span<const double> grid);

/// Inverse of the chosen cumulative at probability p, searching δ >= 0 with
/// an upper bracket ||y|| + 10σ that doubles until it covers p.
/// Throws BracketError when p <= cdf(0) (no interior solution) or p >= 1.
Distance quantile(const Observation& obs, Method method, double p);

}  // namespace confdist::inference
