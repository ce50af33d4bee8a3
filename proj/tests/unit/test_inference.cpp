#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "confdist/errors.hpp"
#include "confdist/inference.hpp"
#include "confdist/specfun.hpp"
#include "oracles.hpp"

namespace confdist::inference {
namespace {

// Exact collision confidence for ||y|| = 5, sigma = 2.5, R = 2 (30-digit quadrature).
constexpr double kExactConfidenceAtR = 0.221495048634475904158935540125;

const Observation kReferenceObs = Observation::from_norm(5.0, 2.5);

double overlap(const Observation& obs, double delta) {
    return specfun::marcum_overlap(delta / obs.sigma(), obs.norm() / obs.sigma());
}

TEST(Observation, Validation) {
    EXPECT_THROW(Observation::from_norm(5.0, 0.0), DomainError);
    EXPECT_THROW(Observation::from_norm(5.0, -1.0), DomainError);
    EXPECT_THROW(Observation::from_norm(-1.0, 1.0), DomainError);
    EXPECT_THROW(Observation::from_pair(NAN, 1.0, 1.0), DomainError);
    EXPECT_THROW(Distance(-0.1), DomainError);
    EXPECT_THROW(CollisionRadius(0.0), DomainError);
    const auto obs = Observation::from_pair(3.0, -4.0, 2.0);
    EXPECT_DOUBLE_EQ(obs.norm(), 5.0);
    EXPECT_DOUBLE_EQ(obs.standardized_norm_sq(), 6.25);
}

TEST(BayesCdf, ZeroAtOrigin) {
    for (double n : {0.0, 1.0, 5.0, 40.0}) EXPECT_EQ(bayes_cdf(Observation::from_norm(n, 1.3), Distance(0.0)), 0.0);
}

TEST(BayesCdf, PosteriorMedianAtReferenceCase) { EXPECT_NEAR(bayes_cdf(kReferenceObs, Distance(5.61)), 0.5, 0.005); }

TEST(BayesCdf, AtRadiusMatchesMonteCarloOracle) {
    // B(2 | ||y||=5, sigma=2.5) = Γ₂(0.64, 4).
    const auto mc = oracle::mc_noncentral_chisq2_cdf(0.64, 4.0, 4'000'000, 99);
    EXPECT_NEAR(bayes_cdf(kReferenceObs, Distance(2.0)), mc.p, 4.0 * mc.std_error);
}

TEST(CdCdf, CollisionConfidenceAtReferenceCase) {
    const double c = cd_cdf(kReferenceObs, Distance(2.0));
    EXPECT_NEAR(c, kExactConfidenceAtR, 1e-12);
    EXPECT_NEAR(c, 0.222, 1e-3);  // as reported, to its printed precision
}

TEST(CdCdf, MedianAtReferenceCase) { EXPECT_NEAR(cd_cdf(kReferenceObs, Distance(4.29)), 0.5, 0.005); }

TEST(CdCdf, AtomAtZero) {
    EXPECT_NEAR(cd_cdf(kReferenceObs, Distance(0.0)), std::exp(-2.0), 1e-14);
    EXPECT_EQ(cd_cdf(Observation::from_norm(0.0, 1.0), Distance(0.0)), 1.0);
}

TEST(Curves, ReferenceCase) {
    EXPECT_NEAR(confidence_curve(kReferenceObs, Distance(4.29)), 0.0, 0.01);
    EXPECT_NEAR(confidence_curve(kReferenceObs, Distance(0.0)), std::abs(1.0 - 2.0 * std::exp(-2.0)), 1e-12);
    EXPECT_NEAR(confidence_curve(kReferenceObs, Distance(8.63)), 0.90, 0.01);
    EXPECT_NEAR(credibility_curve(kReferenceObs, Distance(5.61)), 0.0, 0.01);
    EXPECT_NEAR(credibility_curve(kReferenceObs, Distance(2.01)), 0.90, 0.01);
    EXPECT_EQ(credibility_curve(kReferenceObs, Distance(0.0)), 1.0);
}

TEST(Median, ReferenceCase) {
    const auto cd = median(kReferenceObs, Method::cd);
    const auto bayes = median(kReferenceObs, Method::bayes);
    EXPECT_NEAR(cd.value.value(), 4.29, 0.01);
    EXPECT_NEAR(bayes.value.value(), 5.61, 0.01);
    EXPECT_FALSE(cd.at_boundary);
    EXPECT_FALSE(bayes.at_boundary);
}

TEST(Median, BoundaryWhenAtomDominates) {
    const auto m = median(Observation::from_norm(0.1, 10.0), Method::cd);
    EXPECT_TRUE(m.at_boundary);
    EXPECT_EQ(m.value.value(), 0.0);
}

TEST(LevelInterval, ReferenceCase) {
    const auto cd = level_interval(kReferenceObs, Method::cd, 0.90);
    EXPECT_TRUE(cd.lo_clipped);
    EXPECT_FALSE(cd.hi_clipped);
    EXPECT_EQ(cd.lo.value(), 0.0);
    EXPECT_NEAR(cd.hi.value(), 8.63, 0.01);

    const auto bayes = level_interval(kReferenceObs, Method::bayes, 0.90);
    EXPECT_FALSE(bayes.lo_clipped);
    EXPECT_NEAR(bayes.lo.value(), 2.01, 0.01);
    EXPECT_NEAR(bayes.hi.value(), 9.57, 0.01);
}

TEST(LevelInterval, WhollyInsideAtom) {
    const auto iv = level_interval(Observation::from_norm(0.0, 1.0), Method::cd, 0.9);
    EXPECT_TRUE(iv.lo_clipped);
    EXPECT_TRUE(iv.hi_clipped);
    EXPECT_EQ(iv.hi.value(), 0.0);
}

TEST(LevelInterval, RejectsBadLevel) {
    EXPECT_THROW(level_interval(kReferenceObs, Method::cd, 0.0), DomainError);
    EXPECT_THROW(level_interval(kReferenceObs, Method::cd, 1.0), DomainError);
}

TEST(LevelInterval, Nesting) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> norm(0.0, 12.0);
    for (int trial = 0; trial < 30; ++trial) {
        const auto obs = Observation::from_norm(norm(rng), 1.0 + norm(rng) / 4.0);
        for (const auto method : {Method::cd, Method::bayes}) {
            double prev_lo = INFINITY, prev_hi = 0.0;
            for (double level : {0.5, 0.8, 0.9, 0.99, 0.999}) {
                const auto iv = level_interval(obs, method, level);
                EXPECT_LE(iv.lo.value(), prev_lo + 1e-9);
                EXPECT_GE(iv.hi.value(), prev_hi - 1e-9);
                prev_lo = iv.lo.value();
                prev_hi = iv.hi.value();
            }
        }
    }
}

TEST(Collision, ConfidenceAndPvalue) {
    const CollisionRadius r(2.0);
    EXPECT_NEAR(collision_confidence(kReferenceObs, r), kExactConfidenceAtR, 1e-12);
    EXPECT_NEAR(noncollision_pvalue(kReferenceObs, r), 1.0 - kExactConfidenceAtR, 1e-12);
    EXPECT_NEAR(noncollision_pvalue(kReferenceObs, r), 0.778, 1e-3);
    EXPECT_EQ(collision_confidence(Observation::from_norm(0.0, 1.0), CollisionRadius(1.0)), 1.0);
    // Far-apart, precise observation: confidence of order e^{-128}.
    EXPECT_LT(collision_confidence(Observation::from_norm(10.0, 0.5), r), 1e-12);
}

TEST(Collision, ComplementIdentity) {
    for (double n : {0.0, 0.7, 3.0, 9.0}) {
        for (double s : {0.3, 1.0, 4.0}) {
            const auto obs = Observation::from_norm(n, s);
            const CollisionRadius r(1.5);
            EXPECT_EQ(collision_confidence(obs, r) + noncollision_pvalue(obs, r), 1.0);
        }
    }
}

TEST(Dominance, DifferenceIsMarcumOverlap) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> length(0.0, 15.0);
    std::uniform_real_distribution<double> noise(0.2, 5.0);
    for (int trial = 0; trial < 300; ++trial) {
        const auto obs = Observation::from_norm(length(rng), noise(rng));
        const double d = length(rng);
        const double diff = cd_cdf(obs, Distance(d)) - bayes_cdf(obs, Distance(d));
        EXPECT_NEAR(diff, overlap(obs, d), 1e-10);
        EXPECT_GE(diff, -1e-15);
    }
}

TEST(Invariance, ScaleEquivariance) {
    for (double k : {0.01, 0.5, 3.0, 250.0}) {
        const auto scaled = Observation::from_pair(3.0 * k, 4.0 * k, 2.5 * k);
        for (double d : {0.0, 1.0, 2.0, 4.29, 7.5}) {
            EXPECT_NEAR(bayes_cdf(scaled, Distance(d * k)), bayes_cdf(kReferenceObs, Distance(d)), 1e-12);
            EXPECT_NEAR(cd_cdf(scaled, Distance(d * k)), cd_cdf(kReferenceObs, Distance(d)), 1e-12);
        }
    }
}

TEST(Invariance, Rotation) {
    for (double angle = 0.0; angle < 2.0 * std::numbers::pi; angle += 0.7) {
        const auto obs = Observation::from_pair(5.0 * std::cos(angle), 5.0 * std::sin(angle), 2.5);
        for (double d : {1.0, 2.0, 6.0}) {
            EXPECT_NEAR(bayes_cdf(obs, Distance(d)), bayes_cdf(kReferenceObs, Distance(d)), 1e-13);
            EXPECT_NEAR(cd_cdf(obs, Distance(d)), cd_cdf(kReferenceObs, Distance(d)), 1e-13);
        }
    }
}

TEST(Quantile, RoundTrip) {
    for (double n : {0.5, 3.0, 5.0, 12.0}) {
        const auto obs = Observation::from_norm(n, 1.7);
        for (double p : {0.05, 0.5, 0.95}) {
            for (const auto method : {Method::cd, Method::bayes}) {
                if (p <= cdf(obs, method, Distance(0.0))) continue;
                EXPECT_NEAR(cdf(obs, method, quantile(obs, method, p)), p, 1e-9);
            }
        }
    }
}

TEST(Quantile, OutsideRange) {
    EXPECT_THROW(quantile(kReferenceObs, Method::cd, 0.01), BracketError);  // below the atom
    EXPECT_THROW(quantile(kReferenceObs, Method::bayes, 1.0), BracketError);
    EXPECT_EQ(quantile(kReferenceObs, Method::bayes, 0.0).value(), 0.0);
}

TEST(Quantile, ExtremeUpperTail) {
    const double p = 1.0 - 1e-12;
    const auto d = quantile(kReferenceObs, Method::bayes, p);
    EXPECT_GT(d.value(), 5.0 + 6.0 * 2.5);
    EXPECT_NEAR(bayes_cdf(kReferenceObs, d), p, 1e-13);
}

TEST(Cdfs, LimitsAndMonotonicity) {
    for (double n : {0.0, 2.0, 8.0}) {
        const auto obs = Observation::from_norm(n, 1.0);
        double prev_b = 0.0, prev_c = 0.0;
        for (double d = 0.0; d < 30.0; d += 0.37) {
            const double b = bayes_cdf(obs, Distance(d));
            const double c = cd_cdf(obs, Distance(d));
            EXPECT_GE(b, prev_b - 1e-15);
            EXPECT_GE(c, prev_c - 1e-15);
            prev_b = b;
            prev_c = c;
        }
        EXPECT_NEAR(bayes_cdf(obs, Distance(60.0)), 1.0, 1e-12);
        EXPECT_NEAR(cd_cdf(obs, Distance(60.0)), 1.0, 1e-12);
    }
}

TEST(TabulateCurves, OriginRow) {
    const std::vector<double> grid = {0.0};
    const auto t = tabulate_curves(kReferenceObs, grid);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t.b[0], 0.0);
    EXPECT_NEAR(t.c[0], std::exp(-2.0), 1e-14);
}

TEST(TabulateCurves, ReferencePoints) {
    const std::vector<double> grid = {2.00, 4.29, 5.61};
    const auto t = tabulate_curves(kReferenceObs, grid);
    EXPECT_NEAR(t.c[0], 0.222, 1e-3);
    EXPECT_NEAR(t.c[1], 0.5, 0.005);
    EXPECT_NEAR(t.b[2], 0.5, 0.005);
}

TEST(TabulateCurves, InvariantsOnFineGrid) {
    std::vector<double> grid;
    for (int i = 0; i <= 300; ++i) grid.push_back(0.04 * i);
    const auto t = tabulate_curves(kReferenceObs, grid);
    for (std::size_t i = 0; i < t.size(); ++i) {
        EXPECT_EQ(t.cc[i], std::abs(1.0 - 2.0 * t.c[i]));
        EXPECT_EQ(t.cred[i], std::abs(1.0 - 2.0 * t.b[i]));
        EXPECT_NEAR(t.c[i] - t.b[i], overlap(kReferenceObs, t.grid[i]), 1e-10);
        if (i > 0) {
            EXPECT_GE(t.b[i], t.b[i - 1]);
            EXPECT_GE(t.c[i], t.c[i - 1]);
        }
    }
}

TEST(TabulateCurves, RejectsBadGrid) {
    const std::vector<double> unsorted = {1.0, 0.5};
    const std::vector<double> repeated = {1.0, 1.0};
    const std::vector<double> negative = {-1.0, 0.5};
    EXPECT_THROW(tabulate_curves(kReferenceObs, unsorted), InputError);
    EXPECT_THROW(tabulate_curves(kReferenceObs, repeated), InputError);
    EXPECT_THROW(tabulate_curves(kReferenceObs, negative), InputError);
}

}  // namespace
}  // namespace confdist::inference
