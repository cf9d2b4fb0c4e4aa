#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "qsc/rng.h"
#include "qsc/stats.h"

namespace {

TEST(ChiSquare, KnownCriticalValue) {
    // Two equiprobable bins, 100 draws, 60/40: statistic 4, one degree of freedom.
    const std::vector<double> observed{60, 40};
    const std::vector<double> probs{0.5, 0.5};
    const auto r = qsc::chi_square_goodness_of_fit(observed, probs);
    EXPECT_DOUBLE_EQ(r.statistic, 4.0);
    EXPECT_EQ(r.dof, 1);
    EXPECT_NEAR(r.p_value, std::erfc(std::sqrt(4.0 / 2.0)), 1e-12);
}

TEST(ChiSquare, ExactMatchHasPValueOne) {
    const std::vector<double> observed{25, 50, 25};
    const std::vector<double> probs{0.25, 0.5, 0.25};
    const auto r = qsc::chi_square_goodness_of_fit(observed, probs);
    EXPECT_EQ(r.statistic, 0.0);
    EXPECT_NEAR(r.p_value, 1.0, 1e-12);
}

TEST(ChiSquare, MassOutsideSupportRejects) {
    const std::vector<double> observed{50, 49, 1};
    const std::vector<double> probs{0.5, 0.5, 0.0};
    EXPECT_EQ(qsc::chi_square_goodness_of_fit(observed, probs).p_value, 0.0);
}

TEST(ChiSquare, LengthMismatchThrows) {
    const std::vector<double> observed{1, 2};
    const std::vector<double> probs{1.0};
    EXPECT_THROW(qsc::chi_square_goodness_of_fit(observed, probs), std::invalid_argument);
}

TEST(TwoSample, IdenticalSamples) {
    const std::vector<long> a{1, 1, 2, 2, 3, 1, 1, 2, 4, 1, 1, 1, 2, 2, 1, 1, 3, 1, 1, 2};
    const auto r = qsc::two_sample_chi_square(a, a, 2.0);
    EXPECT_NEAR(r.statistic, 0.0, 1e-12);
    EXPECT_NEAR(r.p_value, 1.0, 1e-12);
}

TEST(TwoSample, DetectsShift) {
    qsc::Rng rng(1);
    std::vector<long> a;
    std::vector<long> b;
    for (int k = 0; k < 5000; ++k) {
        a.push_back(1 + static_cast<long>(qsc::uniform_below(rng, 4)));
        b.push_back(2 + static_cast<long>(qsc::uniform_below(rng, 4)));
    }
    EXPECT_LT(qsc::two_sample_chi_square(a, b).p_value, 1e-10);
}

TEST(TwoSample, SameLawRarelyRejects) {
    qsc::Rng rng(2);
    int rejections = 0;
    for (int rep = 0; rep < 40; ++rep) {
        std::vector<long> a;
        std::vector<long> b;
        for (int k = 0; k < 2000; ++k) {
            a.push_back(static_cast<long>(std::floor(-std::log1p(-qsc::uniform01(rng)) * 3)));
            b.push_back(static_cast<long>(std::floor(-std::log1p(-qsc::uniform01(rng)) * 3)));
        }
        rejections += qsc::two_sample_chi_square(a, b).p_value < 0.01;
    }
    EXPECT_LE(rejections, 4);
}

TEST(Summary, MeanMedianStddev) {
    const std::vector<double> xs{1, 2, 100};
    EXPECT_NEAR(qsc::mean(xs), 103.0 / 3.0, 1e-12);
    EXPECT_EQ(qsc::median(xs), 2.0);
    EXPECT_EQ(qsc::median({4, 1, 3, 2}), 2.5);
    EXPECT_NEAR(qsc::sample_stddev(std::vector<double>{2, 4, 4, 4, 5, 5, 7, 9}), std::sqrt(32.0 / 7.0), 1e-12);
    EXPECT_TRUE(std::isnan(qsc::mean(std::vector<double>{})));
}

TEST(Slope, PowerLaw) {
    std::vector<double> x;
    std::vector<double> y;
    for (double v : {8.0, 16.0, 32.0, 64.0}) {
        x.push_back(v);
        y.push_back(3.0 * std::pow(v, 1.7));
    }
    EXPECT_NEAR(qsc::log_log_slope(x, y), 1.7, 1e-12);
    EXPECT_THROW(qsc::log_log_slope(std::vector<double>{1.0}, std::vector<double>{1.0}), std::invalid_argument);
}

}  // namespace
