#include "citecascade/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "citecascade/errors.hpp"

namespace citecascade::stats {

namespace {

void require_values(std::span<const double> values) {
    if (values.empty()) throw EmptyInput("statistic of an empty sample");
}

}  // namespace

double mean(std::span<const double> values) {
    require_values(values);
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double population_variance(std::span<const double> values) {
    const double m = mean(values);
    double ss = 0;
    for (double v : values) ss += (v - m) * (v - m);
    return ss / static_cast<double>(values.size());
}

double quantile_sorted(std::span<const double> sorted, double q) {
    require_values(sorted);
    if (q < 0 || q > 1) throw std::invalid_argument("quantile outside [0, 1]");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double quantile(std::span<const double> values, double q) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    return quantile_sorted(sorted, q);
}

double median(std::span<const double> values) { return quantile(values, 0.5); }

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("x and y differ in length");
    if (x.size() < 3) throw std::invalid_argument("linear fit needs at least 3 points");
    const double mx = mean(x), my = mean(y);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) throw std::invalid_argument("constant x in linear fit");
    LinearFit fit;
    fit.n = x.size();
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        sse += r * r;
    }
    fit.slope_stderr = std::sqrt(sse / static_cast<double>(x.size() - 2) / sxx);
    return fit;
}

Interval slope_confidence_interval(const LinearFit& fit, double level) {
    if (fit.n < 3) throw std::invalid_argument("confidence interval needs at least 3 points");
    boost::math::students_t dist(static_cast<double>(fit.n - 2));
    const double t = boost::math::quantile(boost::math::complement(dist, (1 - level) / 2));
    return {fit.slope - t * fit.slope_stderr, fit.slope + t * fit.slope_stderr};
}

}  // namespace citecascade::stats
