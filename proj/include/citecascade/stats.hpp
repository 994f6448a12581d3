#pragma once

#include <span>
#include <vector>

namespace citecascade::stats {

// All functions require a non-empty input and throw EmptyInput otherwise.

double mean(std::span<const double> values);

// Divides by n.
double population_variance(std::span<const double> values);

// Linear interpolation between order statistics: position q * (n - 1) in the
// sorted sample. q in [0, 1].
double quantile(std::span<const double> values, double q);

// Even counts average the two middle values.
double median(std::span<const double> values);

// Same as quantile() on data the caller has already sorted ascending.
double quantile_sorted(std::span<const double> sorted, double q);

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    // Standard error of the slope; 0 for an exact fit.
    double slope_stderr = 0;
    std::size_t n = 0;
};

// Ordinary least squares y = intercept + slope * x. Needs at least 3 points
// and non-constant x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

// Two-sided confidence interval for the slope using the Student t quantile
// with n - 2 degrees of freedom.
struct Interval {
    double lo = 0;
    double hi = 0;
    bool contains(double v) const { return lo <= v && v <= hi; }
};
Interval slope_confidence_interval(const LinearFit& fit, double level = 0.95);

}  // namespace citecascade::stats
