#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "confdist/specfun.hpp"
#include "oracles.hpp"

namespace confdist::specfun {
namespace {

// 40-digit references: Poisson mixture of regularized incomplete gammas (mpmath),
// or density quadrature for the large-noncentrality rows.
struct Reference {
    double x;
    double nu;
    double value;
};
constexpr Reference kReferences[] = {
    {1.2, 3.4, 0.12691280098891489366},   {4.0, 0.64, 0.77850495136552409584},
    {0.64, 4.0, 0.049518176429118834083}, {10.0, 10.0, 0.43608333141828569634},
    {50.0, 3.0, 0.99999990342949396937},  {3.0, 50.0, 2.2146317990306221981e-8},
    {200.0, 150.0, 0.96832249987574788686}, {0.01, 0.02, 0.00493801749161373952},
    {2000.0, 1500.0, 0.99999999888102814696}, {1800.0, 2000.0, 0.01054327764646635171},
    {1600.0, 1500.0, 0.89570687859487031978},
};

TEST(BesselI0, ZeroIsOne) { EXPECT_EQ(bessel_i0(0.0), 1.0); }

TEST(BesselI0, OneMatchesSeriesOracle) {
    const double oracle = static_cast<double>(oracle::bessel_i0_series(1.0L, 30));
    EXPECT_NEAR(bessel_i0(1.0), oracle, 1e-12 * oracle);
    EXPECT_NEAR(bessel_i0(1.0), 1.266065877752008335598245, 1e-15);
}

TEST(BesselI0, MatchesSeriesOracleAcrossRange) {
    for (double x : {0.001, 0.3, 2.5, 7.0, 15.0, 29.9, 30.1, 45.0, 80.0}) {
        const double oracle = static_cast<double>(oracle::bessel_i0_series(x));
        EXPECT_NEAR(bessel_i0(x), oracle, 1e-12 * oracle) << "x=" << x;
    }
}

TEST(BesselI0, LargeArgument) {
    EXPECT_NEAR(bessel_i0(700.0) / 1.529593347671873736316207e+302, 1.0, 1e-12);
    EXPECT_TRUE(std::isinf(bessel_i0(800.0)));
    EXPECT_TRUE(std::isfinite(bessel_i0_scaled(1e6)));
}

TEST(BesselI0, ScaledAgreesWithAsymptoticOracle) {
    const double oracle = oracle::bessel_i0_scaled_asymptotic(50.0);
    EXPECT_NEAR(bessel_i0_scaled(50.0), oracle, 1e-6 * oracle);
    EXPECT_NEAR(bessel_i0_scaled(50.0), 0.05656162664745419252993919, 1e-15);
}

TEST(BesselI0, ScaledIsConsistentWithUnscaled) {
    for (double x : {0.5, 10.0, 31.0, 200.0}) {
        EXPECT_NEAR(bessel_i0_scaled(x) * std::exp(x) / bessel_i0(x), 1.0, 1e-13) << x;
    }
}

TEST(BesselI0, RejectsBadInput) {
    EXPECT_THROW(bessel_i0(-1.0), DomainError);
    EXPECT_THROW(bessel_i0(std::numeric_limits<double>::quiet_NaN()), DomainError);
    EXPECT_THROW(bessel_i0_scaled(std::numeric_limits<double>::infinity()), DomainError);
}

TEST(PoissonPmf, MatchesDirectFormula) {
    for (double mean : {0.3, 4.0, 37.5, 900.0}) {
        for (long long k : {0LL, 1LL, 5LL, 40LL, 870LL}) {
            const double direct = std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
            EXPECT_NEAR(poisson_pmf(k, mean), direct, 1e-12 * direct + 1e-300) << k << " " << mean;
        }
    }
    EXPECT_EQ(poisson_pmf(0, 0.0), 1.0);
    EXPECT_EQ(poisson_pmf(3, 0.0), 0.0);
    EXPECT_EQ(poisson_pmf(-1, 2.0), 0.0);
}

TEST(NoncentralChisq2, CentralCaseClosedForm) {
    EXPECT_NEAR(noncentral_chisq2_cdf(4.0, 0.0), 1.0 - std::exp(-2.0), 1e-15);
    for (double x = 0.0; x <= 100.0; x += 0.25) {
        EXPECT_NEAR(noncentral_chisq2_cdf(x, 0.0), 1.0 - std::exp(-x / 2.0), 1e-12) << x;
    }
}

TEST(NoncentralChisq2, GeneralPathNearCentralCase) {
    // A vanishing noncentrality goes through the weighted sweep, not the shortcut.
    for (double x : {0.1, 1.0, 4.0, 10.0, 50.0}) {
        EXPECT_NEAR(noncentral_chisq2_cdf(x, 1e-12), 1.0 - std::exp(-x / 2.0), 1e-12) << x;
    }
}

TEST(NoncentralChisq2, ZeroAtOrigin) {
    for (double nu : {0.0, 0.5, 10.0, 1e4}) EXPECT_EQ(noncentral_chisq2_cdf(0.0, nu), 0.0);
}

TEST(NoncentralChisq2, MatchesHighPrecisionReferences) {
    for (const auto& r : kReferences) {
        EXPECT_NEAR(noncentral_chisq2_cdf(r.x, r.nu), r.value, 1e-12) << "x=" << r.x << " nu=" << r.nu;
    }
}

TEST(NoncentralChisq2, ReportedCollisionConfidenceComplement) {
    // 1 - 0.222 from the reported collision confidence; the exact value is 0.77850.
    const double v = noncentral_chisq2_cdf(4.0, 0.64);
    EXPECT_NEAR(v, 0.778, 1e-3);
}

TEST(NoncentralChisq2, MatchesSimpsonOracle) {
    for (const auto& [x, nu] : {std::pair{1.2, 3.4}, std::pair{7.0, 2.0}, std::pair{20.0, 25.0}}) {
        EXPECT_NEAR(noncentral_chisq2_cdf(x, nu), oracle::quadrature_noncentral_chisq2_cdf(x, nu), 1e-10);
    }
}

TEST(NoncentralChisq2, MatchesMonteCarloOracle) {
    const auto mc = oracle::mc_noncentral_chisq2_cdf(1.2, 3.4, 10'000'000, 20191120);
    EXPECT_NEAR(noncentral_chisq2_cdf(1.2, 3.4), mc.p, 4.0 * mc.std_error);
}

TEST(NoncentralChisq2, MonotoneInBothArguments) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(0.0, 60.0);
    for (int trial = 0; trial < 200; ++trial) {
        double x1 = coord(rng), x2 = coord(rng);
        double n1 = coord(rng), n2 = coord(rng);
        if (x1 > x2) std::swap(x1, x2);
        if (n1 > n2) std::swap(n1, n2);
        EXPECT_LE(noncentral_chisq2_cdf(x1, n1), noncentral_chisq2_cdf(x2, n1) + 1e-15);
        EXPECT_GE(noncentral_chisq2_cdf(x1, n1), noncentral_chisq2_cdf(x1, n2) - 1e-15);
    }
}

TEST(NoncentralChisq2, StaysInUnitInterval) {
    for (double x : {1e-8, 0.5, 5.0, 1e3, 1e5}) {
        for (double nu : {1e-8, 0.5, 5.0, 1e3, 1e5}) {
            const double v = noncentral_chisq2_cdf(x, nu);
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
    }
}

TEST(NoncentralChisq2, HugeNoncentralityStaysFinite) {
    // nu/2 far beyond the e^{-nu/2} underflow point; CDF near its median ~ nu + 2.
    const double v = noncentral_chisq2_cdf(4e6 + 2.0, 4e6);
    EXPECT_GT(v, 0.49);
    EXPECT_LT(v, 0.51);
    EXPECT_NEAR(noncentral_chisq2_cdf(4e6 + 3000.0, 4e6), 0.77325502857, 1e-9);
}

TEST(NoncentralChisq2, MarcumComplementarity) {
    for (int i = 0; i <= 16; ++i) {
        for (int j = 0; j <= 16; ++j) {
            const double a = 0.5 * i, b = 0.5 * j;
            const double lhs = (1.0 - noncentral_chisq2_cdf(b * b, a * a)) + (1.0 - noncentral_chisq2_cdf(a * a, b * b)) - 1.0;
            EXPECT_NEAR(lhs, marcum_overlap(a, b), 1e-10) << "a=" << a << " b=" << b;
        }
    }
}

TEST(NoncentralChisq2, RejectsBadInput) {
    EXPECT_THROW(noncentral_chisq2_cdf(-1.0, 1.0), DomainError);
    EXPECT_THROW(noncentral_chisq2_cdf(1.0, -1.0), DomainError);
    EXPECT_THROW(noncentral_chisq2_cdf(std::numeric_limits<double>::infinity(), 1.0), DomainError);
    EXPECT_THROW(noncentral_chisq2_cdf(1.0, std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST(InvertMonotone, Identity) {
    EXPECT_NEAR(invert_monotone([](double x) { return x; }, 3.5, 0.0, 10.0), 3.5, 1e-10);
}

TEST(InvertMonotone, Square) {
    EXPECT_NEAR(invert_monotone([](double x) { return x * x; }, 2.0, 0.0, 4.0, 1e-12), std::sqrt(2.0), 1e-11);
}

TEST(InvertMonotone, ConfidenceMedian) {
    // C(d | ||y|| = 5, sigma = 2.5) crosses 1/2 near 4.29.
    const auto cd = [](double d) { return 1.0 - noncentral_chisq2_cdf(4.0, d * d / 6.25); };
    EXPECT_NEAR(invert_monotone(cd, 0.5, 0.0, 30.0), 4.29, 0.01);
}

TEST(InvertMonotone, FlatStretchesAndEndpoints) {
    const auto step = [](double x) { return x < 1.0 ? 0.0 : (x < 2.0 ? x - 1.0 : 1.0); };
    EXPECT_NEAR(invert_monotone(step, 0.25, -5.0, 5.0), 1.25, 1e-10);
    EXPECT_EQ(invert_monotone(step, 0.0, -5.0, 5.0), -5.0);
    EXPECT_EQ(invert_monotone(step, 1.0, -5.0, 5.0), 5.0);
}

TEST(InvertMonotone, TargetOutsideBracket) {
    const auto f = [](double x) { return x; };
    EXPECT_THROW(invert_monotone(f, 11.0, 0.0, 10.0), BracketError);
    EXPECT_THROW(invert_monotone(f, -1.0, 0.0, 10.0), BracketError);
    EXPECT_THROW(invert_monotone(f, 1.0, 0.0, 10.0, 0.0), DomainError);
}

}  // namespace
}  // namespace confdist::specfun
