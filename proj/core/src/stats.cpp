#include "asclt/stats.hpp"

#include "asclt/compensated.hpp"
#include "asclt/error.hpp"

#include <algorithm>
#include <cmath>

namespace asclt {

Estimate mean_estimate(std::span<const double> values) {
    require(!values.empty(), "mean_estimate: empty sample");
    const double shift = values.front();
    CompensatedSum sum;
    for (double v : values) sum += v - shift;
    const auto n = static_cast<double>(values.size());
    const double mean = shift + sum.value() / n;
    if (values.size() < 2) return {mean, 0.0};

    CompensatedSum squares;
    for (double v : values) {
        const double d = v - mean;
        squares += d * d;
    }
    const double variance = squares.value() / (n - 1.0);
    return {mean, std::sqrt(variance / n)};
}

Estimate covariance_estimate(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size(), "covariance_estimate: size mismatch");
    require(x.size() >= 2, "covariance_estimate: need at least two draws");
    const double mx = mean_estimate(x).mean;
    const double my = mean_estimate(y).mean;
    std::vector<double> products(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) products[i] = (x[i] - mx) * (y[i] - my);
    const auto n = static_cast<double>(x.size());
    const Estimate product_mean = mean_estimate(products);
    // Unbiased covariance; the standard error is that of the product mean.
    return {product_mean.mean * n / (n - 1.0), product_mean.se};
}

std::vector<std::size_t> late_new_maxima(std::span<const double> values) {
    std::vector<std::size_t> out;
    if (values.size() < 2) return out;
    const std::size_t half = values.size() / 2;
    double running = values.front();
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > running) {
            if (i >= half) out.push_back(i);
            running = values[i];
        }
    }
    return out;
}

double ks_statistic_normal(std::vector<double> sample) {
    require(!sample.empty(), "ks_statistic_normal: empty sample");
    std::sort(sample.begin(), sample.end());
    const auto n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double cdf = 0.5 * std::erfc(-sample[i] / std::sqrt(2.0));
        d = std::max({d, static_cast<double>(i + 1) / n - cdf, cdf - static_cast<double>(i) / n});
    }
    return d;
}

}  // namespace asclt
