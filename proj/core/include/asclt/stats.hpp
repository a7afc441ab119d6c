#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace asclt {

/// Monte Carlo point estimate with its standard error.
struct Estimate {
    double mean = 0.0;
    double se = 0.0;
};

/// Sample mean and standard error. The data are shifted by their first
/// element, so a constant sample yields exactly that constant with se = 0.
Estimate mean_estimate(std::span<const double> values);

/// Sample covariance of paired draws, with the standard error of the mean of
/// the centred products. Constant inputs give exactly 0 with se = 0.
Estimate covariance_estimate(std::span<const double> x, std::span<const double> y);

/// Positions in the final half of `values` (index >= size/2) at which a value
/// strictly exceeds every earlier value. Empty means the running maximum has
/// stabilized.
std::vector<std::size_t> late_new_maxima(std::span<const double> values);

/// Kolmogorov-Smirnov distance between the empirical CDF of `sample` and the
/// standard normal CDF.
double ks_statistic_normal(std::vector<double> sample);

}  // namespace asclt
