#include "confdist/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace confdist::specfun {
namespace {

constexpr double kLnSqrt2Pi = 0.918938533204672741780329736406;  // log(sqrt(2*pi))

// Below this argument the power series is summed directly; above it the
// asymptotic expansion of e^{-x} I0(x) is already at machine precision.
constexpr double kBesselSeriesLimit = 30.0;

// Poisson masses below this are recomputed from the saddle-point form rather than
// carried through a multiplicative recurrence that may have underflowed.
constexpr double kUnderflowGuard = 1e-290;

void require_nonnegative(double v, const char* what) {
    if (!std::isfinite(v) || v < 0.0) {
        throw DomainError(std::string(what) + " must be finite and >= 0");
    }
}

// Power series sum_{k>=0} (x^2/4)^k / (k!)^2; all terms positive.
double bessel_i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

// sum_k c_k / x^k with c_k = c_{k-1} (2k-1)^2 / (8k); e^{-x} I0(x) = that / sqrt(2 pi x).
double bessel_i0_asymptotic_sum(double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        if (next >= term) break;  // asymptotic series started diverging
        term = next;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

// Loader's Stirling remainder: log(n!) - [(n + 1/2) log n - n + log sqrt(2 pi)].
double stirling_error(double n) {
    constexpr double s0 = 1.0 / 12.0;
    constexpr double s1 = 1.0 / 360.0;
    constexpr double s2 = 1.0 / 1260.0;
    constexpr double s3 = 1.0 / 1680.0;
    constexpr double s4 = 1.0 / 1188.0;
    if (n <= 15.0) {
        return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - kLnSqrt2Pi;
    }
    const double nn = n * n;
    if (n > 500.0) return (s0 - s1 / nn) / n;
    if (n > 80.0) return (s0 - (s1 - s2 / nn) / nn) / n;
    if (n > 35.0) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
    return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// Deviance term x log(x/m) + m - x, evaluated without cancellation near x = m.
double deviance(double x, double m) {
    if (std::abs(x - m) < 0.1 * (x + m)) {
        double v = (x - m) / (x + m);
        double s = (x - m) * v;
        double ej = 2.0 * x * v;
        v *= v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v;
            const double s1 = s + ej / (2 * j + 1);
            if (s1 == s) return s1;
            s = s1;
        }
        return s;
    }
    return x * std::log(x / m) + m - x;
}

// P(N > k) for N ~ Poisson(mean), summing whichever tail is monotone from k.
double poisson_upper_tail(long long k, double mean) {
    if (mean == 0.0) return 0.0;
    if (static_cast<double>(k) + 1.0 > mean) {
        // Upper tail directly; term ratios mean/j < 1 and shrinking.
        long long j = k + 1;
        double term = poisson_pmf(j, mean);
        double sum = 0.0;
        while (true) {
            sum += term;
            ++j;
            const double ratio = mean / static_cast<double>(j);
            term *= ratio;
            if (term == 0.0 || term / (1.0 - ratio) <= 1e-17 * sum) {
                sum += term;
                break;
            }
        }
        return sum;
    }
    // Lower tail P(N <= k), summed downward; term ratios j/mean < 1 and shrinking.
    double term = poisson_pmf(k, mean);
    double sum = 0.0;
    for (long long j = k; j >= 0; --j) {
        sum += term;
        if (j == 0) break;
        const double ratio = static_cast<double>(j) / mean;
        term *= ratio;
        if (term / (1.0 - ratio) < 1e-18) {
            sum += term;
            break;
        }
    }
    return std::max(0.0, 1.0 - sum);
}

}  // namespace

double bessel_i0_scaled(double x) {
    require_nonnegative(x, "bessel_i0_scaled: x");
    if (x <= kBesselSeriesLimit) {
        return std::exp(-x) * bessel_i0_series(x);
    }
    return bessel_i0_asymptotic_sum(x) / std::sqrt(2.0 * std::numbers::pi * x);
}

double bessel_i0(double x) {
    require_nonnegative(x, "bessel_i0: x");
    if (x <= kBesselSeriesLimit) {
        return bessel_i0_series(x);
    }
    // Overflows to +inf past x ~ 713.98, where I0 itself exceeds DBL_MAX.
    return std::exp(x - 0.5 * std::log(2.0 * std::numbers::pi * x)) * bessel_i0_asymptotic_sum(x);
}

double poisson_pmf(long long k, double mean) {
    require_nonnegative(mean, "poisson_pmf: mean");
    if (k < 0) return 0.0;
    if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
    if (k == 0) return std::exp(-mean);
    const double x = static_cast<double>(k);
    return std::exp(-stirling_error(x) - deviance(x, mean)) / std::sqrt(2.0 * std::numbers::pi * x);
}

double noncentral_chisq2_cdf(double x, double nu) {
    require_nonnegative(x, "noncentral_chisq2_cdf: x");
    require_nonnegative(nu, "noncentral_chisq2_cdf: nu");
    if (x == 0.0) return 0.0;
    if (nu == 0.0) return -std::expm1(-0.5 * x);

    const double mu = 0.5 * x;     // mean of N, the chi-squared side
    const double lambda = 0.5 * nu;  // mean of K, the Poisson mixing weights
    const auto mode = static_cast<long long>(std::floor(lambda));

    const double w_mode = poisson_pmf(mode, lambda);
    const double g_mode = poisson_upper_tail(mode, mu);
    const double p_mode = poisson_pmf(mode, mu);

    double total = w_mode * g_mode;

    // Upward: G_k = G_{k-1} - P(N = k), w_k = w_{k-1} lambda / k.
    {
        double w = w_mode;
        double g = g_mode;
        double p = p_mode;
        for (long long k = mode + 1;; ++k) {
            const double kd = static_cast<double>(k);
            w *= lambda / kd;
            p *= mu / kd;
            if (p < kUnderflowGuard) p = poisson_pmf(k, mu);
            g = std::max(0.0, g - p);
            total += w * g;
            const double ratio = lambda / (kd + 1.0);
            if (g == 0.0 || w == 0.0 || w * ratio / (1.0 - ratio) < kSeriesTailTolerance) break;
        }
    }

    // Downward: G_k = G_{k+1} + P(N = k+1), w_k = w_{k+1} (k+1) / lambda.
    {
        double w = w_mode;
        double g = g_mode;
        double p = p_mode;  // P(N = k + 1) at the top of each iteration
        for (long long k = mode - 1; k >= 0; --k) {
            const double kd = static_cast<double>(k);
            w *= (kd + 1.0) / lambda;
            g = std::min(1.0, g + p);
            p *= (kd + 1.0) / mu;
            if (p < kUnderflowGuard) p = poisson_pmf(k, mu);
            total += w * g;
            const double ratio = kd / lambda;
            if (w == 0.0 || w * ratio / (1.0 - ratio) < kSeriesTailTolerance) break;
        }
    }

    // Partial sums of nonnegative terms with weights summing to <= 1; anything
    // beyond rounding is a logic error, not something to clip.
    if (total > 1.0 + 1e-12) {
        throw DomainError("noncentral_chisq2_cdf: series exceeded 1");
    }
    return std::min(total, 1.0);
}

double marcum_overlap(double a, double b) {
    require_nonnegative(a, "marcum_overlap: a");
    require_nonnegative(b, "marcum_overlap: b");
    const double d = a - b;
    return std::exp(-0.5 * d * d) * bessel_i0_scaled(a * b);
}

}  // namespace confdist::specfun
