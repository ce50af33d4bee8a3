#include "confdist/inference.hpp"

#include <cmath>
#include <string>

#include "confdist/errors.hpp"
#include "confdist/specfun.hpp"

namespace confdist::inference {
namespace {

constexpr int kMaxBracketDoublings = 64;

double standardized_sq(double length, double sigma) {
    const double r = length / sigma;
    return r * r;
}

}  // namespace

Distance::Distance(double delta) : delta_(delta) {
    if (!std::isfinite(delta) || delta < 0.0) {
        throw DomainError("distance must be finite and >= 0, got " + std::to_string(delta));
    }
}

CollisionRadius::CollisionRadius(double radius) : radius_(radius) {
    if (!std::isfinite(radius) || radius <= 0.0) {
        throw DomainError("collision radius must be finite and > 0, got " + std::to_string(radius));
    }
}

Observation::Observation(double y1, double y2, double norm, double sigma)
    : y1_(y1), y2_(y2), norm_(norm), sigma_(sigma) {
    if (!std::isfinite(sigma) || sigma <= 0.0) {
        throw DomainError("sigma must be finite and > 0, got " + std::to_string(sigma));
    }
}

Observation Observation::from_pair(double y1, double y2, double sigma) {
    if (!std::isfinite(y1) || !std::isfinite(y2)) {
        throw DomainError("observation components must be finite");
    }
    return Observation(y1, y2, std::hypot(y1, y2), sigma);
}

Observation Observation::from_norm(double norm, double sigma) {
    if (!std::isfinite(norm) || norm < 0.0) {
        throw DomainError("observed norm must be finite and >= 0, got " + std::to_string(norm));
    }
    return Observation(norm, 0.0, norm, sigma);
}

double Observation::standardized_norm_sq() const { return standardized_sq(norm_, sigma_); }

std::string_view to_string(Method method) { return method == Method::bayes ? "bayes" : "cd"; }

double bayes_cdf(const Observation& obs, Distance delta) {
    return specfun::noncentral_chisq2_cdf(standardized_sq(delta.value(), obs.sigma()), obs.standardized_norm_sq());
}

double cd_cdf(const Observation& obs, Distance delta) {
    return 1.0 -
           specfun::noncentral_chisq2_cdf(obs.standardized_norm_sq(), standardized_sq(delta.value(), obs.sigma()));
}

double cdf(const Observation& obs, Method method, Distance delta) {
    return method == Method::bayes ? bayes_cdf(obs, delta) : cd_cdf(obs, delta);
}

double confidence_curve(const Observation& obs, Distance delta) { return std::abs(1.0 - 2.0 * cd_cdf(obs, delta)); }

double credibility_curve(const Observation& obs, Distance delta) {
    return std::abs(1.0 - 2.0 * bayes_cdf(obs, delta));
}

Distance quantile(const Observation& obs, Method method, double p) {
    const auto f = [&](double d) { return cdf(obs, method, Distance(d)); };
    const double at_zero = f(0.0);
    if (!(p >= at_zero) || !(p < 1.0)) {
        throw BracketError("quantile: probability " + std::to_string(p) + " outside [cdf(0), 1)");
    }
    if (p == at_zero) return Distance(0.0);

    double hi = obs.norm() + 10.0 * obs.sigma();
    int doublings = 0;
    while (f(hi) < p) {
        if (++doublings > kMaxBracketDoublings) {
            throw BracketError("quantile: could not bracket probability " + std::to_string(p));
        }
        hi *= 2.0;
    }
    return Distance(specfun::invert_monotone(f, p, 0.0, hi));
}

Median median(const Observation& obs, Method method) {
    if (cdf(obs, method, Distance(0.0)) >= 0.5) {
        return {Distance(0.0), true};
    }
    return {quantile(obs, method, 0.5), false};
}

Interval level_interval(const Observation& obs, Method method, double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw DomainError("level must lie in (0, 1), got " + std::to_string(level));
    }
    const double lower_tail = 0.5 * (1.0 - level);
    const double upper_tail = 0.5 * (1.0 + level);
    const double at_zero = cdf(obs, method, Distance(0.0));

    Interval out;
    if (at_zero >= lower_tail) {
        out.lo_clipped = true;
    } else {
        out.lo = quantile(obs, method, lower_tail);
    }
    if (at_zero >= upper_tail) {
        out.hi_clipped = true;
    } else {
        out.hi = quantile(obs, method, upper_tail);
    }
    return out;
}

double collision_confidence(const Observation& obs, CollisionRadius radius) {
    return cd_cdf(obs, Distance(radius.value()));
}

double noncollision_pvalue(const Observation& obs, CollisionRadius radius) {
    return 1.0 - collision_confidence(obs, radius);
}

CurveTable tabulate_curves(const Observation& obs, std::span<const double> grid) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]) || grid[i] < 0.0) {
            throw InputError("curve grid values must be finite and >= 0");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw InputError("curve grid must be strictly increasing");
        }
    }
    CurveTable table;
    table.grid.assign(grid.begin(), grid.end());
    table.b.reserve(grid.size());
    table.c.reserve(grid.size());
    table.cc.reserve(grid.size());
    table.cred.reserve(grid.size());
    for (const double d : grid) {
        const double b = bayes_cdf(obs, Distance(d));
        const double c = cd_cdf(obs, Distance(d));
        table.b.push_back(b);
        table.c.push_back(c);
        table.cc.push_back(std::abs(1.0 - 2.0 * c));
        table.cred.push_back(std::abs(1.0 - 2.0 * b));
    }
    return table;
}

}  // namespace confdist::inference
