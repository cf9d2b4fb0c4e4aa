#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace qsc {

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

/// Goodness of fit of observed counts against category probabilities.
/// Categories with expected count below min_expected are pooled into one.
ChiSquareResult chi_square_goodness_of_fit(std::span<const double> observed, std::span<const double> probabilities,
                                           double min_expected = 5.0);

/// Two-sample chi-square homogeneity test over integer-valued samples
/// (e.g. round counts). Adjacent values are merged until every bin has at
/// least min_expected expected count under the pooled law.
ChiSquareResult two_sample_chi_square(std::span<const long> a, std::span<const long> b, double min_expected = 5.0);

double mean(std::span<const double> xs);
double median(std::vector<double> xs);
double sample_stddev(std::span<const double> xs);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace qsc
