#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cauchy_gof/distributions.hpp"
#include "cauchy_gof/errors.hpp"

using namespace cauchy_gof;

TEST(Sample, RejectsEmptyAndNonFinite) {
    EXPECT_THROW(Sample({}), ValidationError);
    EXPECT_THROW(Sample({1.0, std::nan("")}), ValidationError);
    EXPECT_THROW(Sample({INFINITY}), ValidationError);
    const Sample s({3.0, -1.0, 2.0});
    EXPECT_EQ(s.size(), 3u);
    EXPECT_EQ(s[0], 3.0);
    EXPECT_EQ(s.sorted(), (std::vector<double>{-1.0, 2.0, 3.0}));
}

TEST(CauchyReference, Pdf) {
    EXPECT_NEAR(cauchy_pdf(0.0), 1.0 / std::numbers::pi, 1e-15);
    EXPECT_NEAR(cauchy_pdf(1.0), 0.5 / std::numbers::pi, 1e-15);
    EXPECT_NEAR(cauchy_pdf(0.0), 0.3183099, 1e-7);
    EXPECT_NEAR(cauchy_pdf(1.0), 0.1591549, 1e-7);
}

TEST(CauchyReference, Cdf) {
    EXPECT_DOUBLE_EQ(cauchy_cdf(0.0), 0.5);
    EXPECT_DOUBLE_EQ(cauchy_cdf(1.0), 0.75);
    EXPECT_DOUBLE_EQ(cauchy_cdf(-1.0), 0.25);
    // far tail keeps relative accuracy instead of cancelling to 0
    EXPECT_NEAR(cauchy_cdf(-1e12) * 1e12 * std::numbers::pi, 1.0, 1e-9);
    EXPECT_NEAR(cauchy_sf(1e12) * 1e12 * std::numbers::pi, 1.0, 1e-9);
    for (double x : {-30.0, -2.5, 0.1, 7.0}) {
        EXPECT_NEAR(cauchy_cdf(x) + cauchy_sf(x), 1.0, 1e-15);
    }
}

TEST(CauchyReference, Quantile) {
    EXPECT_NEAR(cauchy_quantile(0.5), 0.0, 1e-15);
    EXPECT_NEAR(cauchy_quantile(0.75), 1.0, 1e-14);
    EXPECT_NEAR(cauchy_quantile(0.9999), 3183.0987571181509, 1e-7);
    EXPECT_THROW((void)cauchy_quantile(0.0), ValidationError);
    EXPECT_THROW((void)cauchy_quantile(1.0), ValidationError);
    for (double p : {1e-9, 0.01, 0.3, 0.62, 0.999999}) {
        EXPECT_NEAR(cauchy_cdf(cauchy_quantile(p)), p, 1e-12 * std::max(1.0, 1.0 / p) * p + 1e-15);
    }
}

TEST(ChiSquare, UpperTail) {
    EXPECT_DOUBLE_EQ(chisq1_sf(0.0), 1.0);
    EXPECT_NEAR(chisq1_sf(3.8415), 0.0500, 1e-4);
    EXPECT_NEAR(chisq1_sf(3.8415), 0.04999877207122227, 1e-12);
    EXPECT_NEAR(chisq1_sf(0.3206), 0.5711, 5e-4);
    EXPECT_EQ(chisq1_sf(INFINITY), 0.0);
    EXPECT_NEAR(chisq1_cdf(3.8415) + chisq1_sf(3.8415), 1.0, 1e-15);
}

TEST(Returns, SimpleReturns) {
    const Sample a = compute_returns(std::vector<double>{100, 110});
    ASSERT_EQ(a.size(), 1u);
    EXPECT_NEAR(a[0], 0.1, 1e-15);
    const Sample b = compute_returns(std::vector<double>{100, 100, 100});
    EXPECT_EQ(b.sorted(), (std::vector<double>{0.0, 0.0}));
    const Sample c = compute_returns(std::vector<double>{2, 1, 2});
    EXPECT_DOUBLE_EQ(c[0], -0.5);
    EXPECT_DOUBLE_EQ(c[1], 1.0);
    EXPECT_THROW((void)compute_returns(std::vector<double>{5}), ValidationError);
    EXPECT_THROW((void)compute_returns(std::vector<double>{0, 1}), ValidationError);
}

TEST(Standardize, MedianAndHalfIqr) {
    const Standardized st = standardize(Sample({-2.0, 0.0, 2.0}));
    EXPECT_DOUBLE_EQ(st.location, 0.0);
    // type-7 quartiles of {-2,0,2} are -1 and 1
    EXPECT_DOUBLE_EQ(st.scale, 1.0);
    EXPECT_DOUBLE_EQ(st.sample[2], 2.0);

    // location-scale equivariance
    const Sample base({0.3, -1.7, 4.2, 0.9, -0.4, 2.2});
    std::vector<double> moved;
    for (double x : base.values()) moved.push_back(5.0 + 3.0 * x);
    const Standardized a = standardize(base);
    const Standardized b = standardize(Sample(moved));
    for (std::size_t i = 0; i < base.size(); ++i) {
        EXPECT_NEAR(a.sample[i], b.sample[i], 1e-12);
    }
    EXPECT_THROW((void)standardize(Sample({1.0, 1.0, 1.0})), ValidationError);
}

TEST(DistributionSpec, ParseAndPrint) {
    const auto spec = DistributionSpec::parse("cauchy:0,1");
    EXPECT_EQ(spec, DistributionSpec::standard_cauchy());
    EXPECT_EQ(spec.to_string(), "cauchy:0,1");
    EXPECT_EQ(DistributionSpec::parse("t:3").family, Family::student_t);
    EXPECT_EQ(DistributionSpec::parse("gamma:2,1").to_string(), "gamma:2,1");
    EXPECT_EQ(DistributionSpec::parse(DistributionSpec::parse("beta:2,5").to_string()),
              DistributionSpec::parse("beta:2,5"));
    EXPECT_THROW((void)DistributionSpec::parse("weibull:1,1"), ValidationError);
    EXPECT_THROW((void)DistributionSpec::parse("cauchy:0,-1"), ValidationError);
    EXPECT_THROW((void)DistributionSpec::parse("uniform:1,0"), ValidationError);
    EXPECT_THROW((void)DistributionSpec::parse("t:1,2"), ValidationError);
}

TEST(Sampler, DeterministicPerSeed) {
    const auto spec = DistributionSpec::standard_cauchy();
    EXPECT_EQ(sample_distribution(spec, 50, 7), sample_distribution(spec, 50, 7));
    EXPECT_NE(sample_distribution(spec, 50, 7), sample_distribution(spec, 50, 8));
    EXPECT_THROW((void)sample_distribution(spec, 0, 1), ValidationError);
}

// Coarse moment/quantile checks on large draws.
TEST(Sampler, FamiliesHaveExpectedCentre) {
    auto median_of = [](const Sample& s) {
        auto v = s.sorted();
        return quantile_type7(v, 0.5);
    };
    const std::size_t n = 20000;
    EXPECT_NEAR(median_of(sample_distribution(DistributionSpec::parse("cauchy:2,1"), n, 1)), 2.0,
                0.05);
    EXPECT_NEAR(median_of(sample_distribution(DistributionSpec::parse("normal:0,1"), n, 2)), 0.0,
                0.05);
    EXPECT_NEAR(median_of(sample_distribution(DistributionSpec::parse("laplace:0,1"), n, 3)), 0.0,
                0.05);
    EXPECT_NEAR(median_of(sample_distribution(DistributionSpec::parse("uniform:0,1"), n, 4)), 0.5,
                0.02);
    const Sample g = sample_distribution(DistributionSpec::parse("gamma:2,1"), n, 5);
    double mean = 0.0;
    for (double x : g.values()) mean += x;
    EXPECT_NEAR(mean / n, 2.0, 0.05);
    const Sample b = sample_distribution(DistributionSpec::parse("beta:2,2"), n, 6);
    for (double x : b.values()) {
        ASSERT_GT(x, 0.0);
        ASSERT_LT(x, 1.0);
    }
    // Laplace(0, 1): P(|X| > 1) = exp(-1)
    const Sample l = sample_distribution(DistributionSpec::parse("laplace:0,1"), n, 7);
    std::size_t tail = 0;
    for (double x : l.values()) tail += std::abs(x) > 1.0;
    EXPECT_NEAR(static_cast<double>(tail) / n, std::exp(-1.0), 0.015);
    // Cauchy draws: P(X <= 1) = 0.75
    const Sample c = sample_distribution(DistributionSpec::standard_cauchy(), n, 8);
    std::size_t below = 0;
    for (double x : c.values()) below += x <= 1.0;
    EXPECT_NEAR(static_cast<double>(below) / n, 0.75, 0.015);
}
