#include "confdist/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "confdist/errors.hpp"

namespace confdist::quadrature {
namespace {

// Kronrod abscissae on [0, 1]; odd indices are the embedded Gauss points.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_center = f(center);
    double kronrod = f_center * kKronrodWeights[7];
    double gauss = f_center * kGaussWeights[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[i] * pair;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, double abs_tol, int max_intervals) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(abs_tol > 0.0)) {
        throw DomainError("quadrature::integrate: bounds must be finite and tolerance positive");
    }
    if (a == b) return {};

    std::priority_queue<Segment> pending;
    pending.push(gauss_kronrod(f, a, b));
    double value = pending.top().value;
    double error = pending.top().error;

    while (error > abs_tol) {
        if (static_cast<int>(pending.size()) >= max_intervals) {
            throw BracketError("quadrature::integrate: interval budget exhausted before tolerance");
        }
        const Segment worst = pending.top();
        pending.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = gauss_kronrod(f, worst.a, mid);
        const Segment right = gauss_kronrod(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        pending.push(left);
        pending.push(right);
    }

    // Re-sum to shed the drift from incremental updates.
    Result result;
    result.intervals = static_cast<int>(pending.size());
    while (!pending.empty()) {
        result.value += pending.top().value;
        result.error_estimate += pending.top().error;
        pending.pop();
    }
    return result;
}

}  // namespace confdist::quadrature
