#pragma once

#include <functional>

namespace confdist::quadrature {

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    int intervals = 0;
};

/// Globally adaptive Gauss–Kronrod (7/15) integration of f over [a, b].
/// The interval with the largest |K15 - G7| is bisected until the summed
/// estimate drops below abs_tol. Throws BracketError if max_intervals is hit first.
Result integrate(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-9,
                 int max_intervals = 4096);

}  // namespace confdist::quadrature
