#pragma once

// Brute-force reference computations used only by the tests. None of these
// call into the library's summation or simulation paths.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using Weight = std::function<double(std::int64_t)>;

// Plain long-double loop.
inline long double naive_total(const Weight& d, std::int64_t n) {
    long double s = 0.0L;
    for (std::int64_t k = 1; k <= n; ++k) s += static_cast<long double>(d(k));
    return s;
}

// sum_{1<=k<=l<=N} d_k d_l (k/l)^alpha, O(N^2), long double.
inline long double double_sum(const Weight& d, double alpha, std::int64_t n) {
    long double total = 0.0L;
    for (std::int64_t l = 1; l <= n; ++l) {
        for (std::int64_t k = 1; k <= l; ++k) {
            total += static_cast<long double>(d(k)) * d(l) *
                     std::pow(static_cast<long double>(k) / static_cast<long double>(l), static_cast<long double>(alpha));
        }
    }
    return total;
}

// V_{m,n} = sum_{l=m}^n d_l l^-beta sum_{k=1}^l d_k k^beta, O(n^2).
inline long double v_double_loop(const Weight& d, double beta, std::int64_t m, std::int64_t n) {
    long double total = 0.0L;
    for (std::int64_t l = m; l <= n; ++l) {
        long double inner = 0.0L;
        for (std::int64_t k = 1; k <= l; ++k) inner += static_cast<long double>(d(k)) * std::pow(static_cast<long double>(k), static_cast<long double>(beta));
        total += static_cast<long double>(d(l)) * std::pow(static_cast<long double>(l), static_cast<long double>(-beta)) * inner;
    }
    return total;
}

// Var(sum_{k<=N} d_k S_k/sqrt(k)) for iid unit-variance increments:
// sum over all (k,l) of d_k d_l sqrt(min/max), O(N^2).
inline long double gaussian_weighted_variance(const Weight& d, std::int64_t n) {
    long double total = 0.0L;
    for (std::int64_t k = 1; k <= n; ++k) {
        for (std::int64_t l = 1; l <= n; ++l) {
            const long double lo = static_cast<long double>(std::min(k, l));
            const long double hi = static_cast<long double>(std::max(k, l));
            total += static_cast<long double>(d(k)) * d(l) * std::sqrt(lo / hi);
        }
    }
    return total;
}

// E(sum_{l=m}^n d_l (xi_l - xi_{k,l}))^2 for f = identity, a_l = sqrt(l):
// the summand is d_l S_k / sqrt(l), so the moment is k (sum d_l l^-1/2)^2.
inline long double lagged_difference_second_moment(const Weight& d, std::int64_t k, std::int64_t m, std::int64_t n) {
    long double s = 0.0L;
    for (std::int64_t l = m; l <= n; ++l) s += static_cast<long double>(d(l)) / std::sqrt(static_cast<long double>(l));
    return static_cast<long double>(k) * s * s;
}

// A_N recomputed from scratch on a stored sequence of f(T_k).
inline long double batch_average(const Weight& d, const std::vector<double>& f_values, std::int64_t n) {
    long double num = 0.0L;
    long double den = 0.0L;
    for (std::int64_t k = 1; k <= n; ++k) {
        num += static_cast<long double>(d(k)) * f_values[static_cast<std::size_t>(k - 1)];
        den += static_cast<long double>(d(k));
    }
    return num / den;
}

// Falls back to the absolute error when the reference is exactly zero.
inline double relative_error(long double got, long double want) {
    if (want == 0.0L) return static_cast<double>(std::fabs(got));
    return static_cast<double>(std::fabs(got - want) / std::fabs(want));
}

}  // namespace oracle
