#include "qsc/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace qsc {

namespace {

double chi_square_sf(double statistic, int dof) {
    if (dof <= 0) {
        return 1.0;
    }
    boost::math::chi_squared dist(dof);
    return boost::math::cdf(boost::math::complement(dist, statistic));
}

}  // namespace

ChiSquareResult chi_square_goodness_of_fit(std::span<const double> observed, std::span<const double> probabilities,
                                           double min_expected) {
    if (observed.size() != probabilities.size()) {
        throw std::invalid_argument("observed and probability vectors differ in length");
    }
    double total = std::accumulate(observed.begin(), observed.end(), 0.0);
    ChiSquareResult r;
    if (total <= 0) {
        return r;
    }
    double pooled_obs = 0.0;
    double pooled_exp = 0.0;
    int bins = 0;
    for (std::size_t k = 0; k < observed.size(); ++k) {
        double expected = probabilities[k] * total;
        if (expected < min_expected) {
            pooled_obs += observed[k];
            pooled_exp += expected;
            continue;
        }
        r.statistic += (observed[k] - expected) * (observed[k] - expected) / expected;
        ++bins;
    }
    if (pooled_exp > 0) {
        r.statistic += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
        ++bins;
    } else if (pooled_obs > 0) {
        // Mass observed where the law has none.
        r.statistic = INFINITY;
        r.dof = std::max(bins - 1, 1);
        r.p_value = 0.0;
        return r;
    }
    r.dof = bins - 1;
    r.p_value = chi_square_sf(r.statistic, r.dof);
    return r;
}

ChiSquareResult two_sample_chi_square(std::span<const long> a, std::span<const long> b, double min_expected) {
    ChiSquareResult r;
    if (a.empty() || b.empty()) {
        return r;
    }
    std::map<long, std::pair<double, double>> counts;
    for (long x : a) {
        counts[x].first += 1;
    }
    for (long x : b) {
        counts[x].second += 1;
    }
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double n = na + nb;

    // Merge ascending values into bins whose smaller expected count reaches min_expected.
    std::vector<std::pair<double, double>> bins;
    std::pair<double, double> acc{0, 0};
    auto enough = [&](const std::pair<double, double>& c) {
        double total = c.first + c.second;
        return std::min(total * na / n, total * nb / n) >= min_expected;
    };
    for (const auto& [value, c] : counts) {
        acc.first += c.first;
        acc.second += c.second;
        if (enough(acc)) {
            bins.push_back(acc);
            acc = {0, 0};
        }
    }
    if (acc.first + acc.second > 0) {
        if (bins.empty()) {
            bins.push_back(acc);
        } else {
            bins.back().first += acc.first;
            bins.back().second += acc.second;
        }
    }
    for (const auto& [ca, cb] : bins) {
        double total = ca + cb;
        double ea = total * na / n;
        double eb = total * nb / n;
        r.statistic += (ca - ea) * (ca - ea) / ea + (cb - eb) * (cb - eb) / eb;
    }
    r.dof = static_cast<int>(bins.size()) - 1;
    r.p_value = chi_square_sf(r.statistic, r.dof);
    return r;
}

double mean(std::span<const double> xs) {
    if (xs.empty()) {
        return NAN;
    }
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double median(std::vector<double> xs) {
    if (xs.empty()) {
        return NAN;
    }
    std::sort(xs.begin(), xs.end());
    std::size_t mid = xs.size() / 2;
    if (xs.size() % 2 == 1) {
        return xs[mid];
    }
    return 0.5 * (xs[mid - 1] + xs[mid]);
}

double sample_stddev(std::span<const double> xs) {
    if (xs.size() < 2) {
        return 0.0;
    }
    double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - m) * (x - m);
    }
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("log_log_slope needs at least two paired points");
    }
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t k = 0; k < x.size(); ++k) {
        lx.push_back(std::log(x[k]));
        ly.push_back(std::log(y[k]));
    }
    double mx = mean(lx);
    double my = mean(ly);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        sxy += (lx[k] - mx) * (ly[k] - my);
        sxx += (lx[k] - mx) * (lx[k] - mx);
    }
    return sxy / sxx;
}

}  // namespace qsc
