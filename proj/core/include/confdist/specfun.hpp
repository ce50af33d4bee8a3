#pragma once

#include <cmath>
#include <concepts>

#include "confdist/errors.hpp"

namespace confdist::specfun {

/// Truncation threshold for the Poisson-weight tail in the Γ₂ series.
inline constexpr double kSeriesTailTolerance = 1e-14;

/// Default argument tolerance for `invert_monotone`.
inline constexpr double kRootTolerance = 1e-10;

/// Modified Bessel function of the first kind, order zero. Requires finite x >= 0.
double bessel_i0(double x);

/// Exponentially scaled I0: e^{-x} I0(x). Finite for every finite x >= 0.
double bessel_i0_scaled(double x);

/// Poisson probability mass P(N = k) for N ~ Poisson(mean), via the saddle-point
/// expansion so it stays accurate (and free of e^{-mean} underflow) for large means.
double poisson_pmf(long long k, double mean);

/// CDF of the non-central chi-squared law with two degrees of freedom,
/// Γ₂(x, ν) = Σ_k Pois(k; ν/2) P(χ²_{2+2k} <= x).
///
/// Evaluated as P(N > K) with N ~ Pois(x/2) and K ~ Pois(ν/2): the Poisson weights of
/// K are swept in both directions from the modal index until the remaining weight is
/// below kSeriesTailTolerance. Absolute error is about 1e-13 across the range.
/// Throws DomainError for negative or non-finite arguments.
double noncentral_chisq2_cdf(double x, double nu);

/// P(U = V) for independent U ~ Pois(a²/2), V ~ Pois(b²/2); equals
/// e^{-(a²+b²)/2} I0(ab). This is the overlap term of the Marcum-Q complementarity
/// Q1(a,b) + Q1(b,a) = 1 + e^{-(a²+b²)/2} I0(ab).
double marcum_overlap(double a, double b);

/// Bracketed bisection for a nondecreasing f: returns x in [lo, hi] with
/// f(x) ≈ target, to argument width `tol`.
///
/// Throws BracketError when target lies outside [f(lo), f(hi)].
template <std::invocable<double> F>
double invert_monotone(F&& f, double target, double lo, double hi, double tol = kRootTolerance) {
    if (!(tol > 0.0) || !std::isfinite(lo) || !std::isfinite(hi) || lo > hi || !std::isfinite(target)) {
        throw DomainError("invert_monotone: invalid bracket or tolerance");
    }
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (target < f_lo || target > f_hi) {
        throw BracketError("invert_monotone: target outside [f(lo), f(hi)]");
    }
    if (f_lo == target) return lo;
    if (f_hi == target) return hi;
    while (hi - lo > tol) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
        const double f_mid = f(mid);
        if (f_mid == target) return mid;
        if (f_mid < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo + 0.5 * (hi - lo);
}

}  // namespace confdist::specfun
