#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "citecascade/errors.hpp"
#include "citecascade/stats.hpp"
#include "oracles.hpp"

using namespace citecascade;

TEST(Stats, MomentsAndQuantiles) {
    const std::vector<double> v{0.0, 1.0};
    EXPECT_DOUBLE_EQ(stats::mean(v), 0.5);
    EXPECT_DOUBLE_EQ(stats::population_variance(v), 0.25);
    EXPECT_DOUBLE_EQ(stats::median(v), 0.5);

    const std::vector<double> w{7, 1, 3, 5};
    EXPECT_DOUBLE_EQ(stats::median(w), 4.0);
    EXPECT_DOUBLE_EQ(stats::quantile(w, 0.25), 2.5);
    EXPECT_DOUBLE_EQ(stats::quantile(w, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(stats::quantile(w, 1.0), 7.0);
    EXPECT_THROW(stats::mean(std::vector<double>{}), EmptyInput);
    EXPECT_THROW(stats::median(std::vector<double>{}), EmptyInput);
}

TEST(Stats, QuantileMatchesOracle) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> value(-10, 10);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> v(1 + trial % 17);
        for (auto& x : v) x = value(rng);
        for (double q : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) {
            EXPECT_NEAR(stats::quantile(v, q), oracle::quantile(v, q), 1e-12);
        }
    }
}

TEST(Stats, LinearFitRecoversLine) {
    const std::vector<double> x{1, 2, 3, 4, 5};
    std::vector<double> y;
    for (double xi : x) y.push_back(2.0 - 0.5 * xi);
    auto fit = stats::linear_fit(x, y);
    EXPECT_NEAR(fit.slope, -0.5, 1e-14);
    EXPECT_NEAR(fit.intercept, 2.0, 1e-14);
    EXPECT_NEAR(fit.slope_stderr, 0.0, 1e-14);
    auto ci = stats::slope_confidence_interval(fit);
    EXPECT_TRUE(ci.contains(-0.5));
    EXPECT_FALSE(ci.contains(0.0));
    EXPECT_THROW(stats::linear_fit(std::vector<double>{1, 2}, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST(Stats, SlopeIntervalMatchesReference) {
    // Reference: y = {1.1, 1.9, 3.2, 3.8, 5.1} on x = 1..5. Slope 0.99,
    // stderr sqrt(SSE / 3 / 10) with SSE = 0.107, t(0.975, 3) = 3.182446305.
    const std::vector<double> x{1, 2, 3, 4, 5}, y{1.1, 1.9, 3.2, 3.8, 5.1};
    auto fit = stats::linear_fit(x, y);
    EXPECT_NEAR(fit.slope, 0.99, 1e-12);
    const double se = std::sqrt(0.107 / 3.0 / 10.0);
    EXPECT_NEAR(fit.slope_stderr, se, 1e-12);
    auto ci = stats::slope_confidence_interval(fit);
    EXPECT_NEAR(ci.lo, 0.99 - 3.182446305 * se, 1e-8);
    EXPECT_NEAR(ci.hi, 0.99 + 3.182446305 * se, 1e-8);
}
