#include "confdist/random.hpp"

#include <cmath>
#include <numbers>

namespace confdist::random {

std::pair<double, double> standard_normal_pair(SplitMix64& rng) {
    const double u1 = uniform_open(rng);
    const double u2 = uniform_open(rng);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace confdist::random
