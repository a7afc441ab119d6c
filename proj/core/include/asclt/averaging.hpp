#pragma once

#include "asclt/compensated.hpp"
#include "asclt/functions.hpp"
#include "asclt/models.hpp"
#include "asclt/report.hpp"
#include "asclt/weights.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace asclt {

/// Streaming state for A_N = D_N^-1 sum_{k<=N} d_k f(T_k).
///
/// The weighted sum is kept relative to the first f value, so a constant f
/// reproduces its value exactly and the state is O(1) in N.
class LogAverageAccumulator {
public:
    /// Adds d_k f(T_k). Throws UsageError for d_k <= 0.
    void add(double weight, double value);

    /// Index of the next term (1 before any term has been added).
    std::int64_t next_k() const { return next_k_; }
    bool empty() const { return next_k_ == 1; }

    /// A_N; requires at least one term.
    double average() const;

    double weighted_sum() const;
    double total_weight() const { return total_.value(); }

    friend bool operator==(const LogAverageAccumulator&, const LogAverageAccumulator&) = default;

private:
    std::int64_t next_k_ = 1;
    double shift_ = 0.0;
    CompensatedSum weighted_;
    CompensatedSum total_;
};

LogAverageAccumulator accumulate(LogAverageAccumulator acc, double weight, double value);

struct ConvergenceTrace {
    std::vector<std::int64_t> checkpoints;
    std::vector<std::uint64_t> seeds;
    std::vector<std::vector<double>> per_seed;  // per_seed[s][c] = A_{checkpoints[c]} for seeds[s]
    double target = 0.0;
    std::vector<double> median_abs_error;
    std::vector<double> max_abs_error;
};

/// One streaming pass per seed over a simulated path, recording A_N at each
/// checkpoint; the target is the integral of f against the model's limit
/// law. Seeds run on up to `threads` workers; output does not depend on it.
ConvergenceTrace run_experiment(const SequenceModel& model, const WeightScheme& scheme, const LipschitzFunction& f,
                                std::int64_t n_max, std::span<const std::int64_t> checkpoints,
                                std::span<const std::uint64_t> seeds, unsigned threads = 1);

/// Median absolute error strictly decreasing across the last `count`
/// checkpoints.
bool median_error_decreasing(const ConvergenceTrace& trace, std::size_t count);

/// N_j = min{N <= n_cap : D_N >= exp(sqrt j)} for j = 1..j_max; unreachable
/// j are dropped and repeated N_j collapsed, so the result is strictly
/// increasing.
std::vector<std::int64_t> subsequence_checkpoints(const WeightScheme& scheme, int j_max, std::int64_t n_cap);

/// Union of the subsequence checkpoints and the decade grid up to n_max.
std::vector<std::int64_t> default_checkpoints(const WeightScheme& scheme, std::int64_t n_max);

/// D_{N+1}/D_N at each grid point. Passes when the last value is within
/// 1e-3 of 1.
ConditionReport ratio_consecutive(const WeightScheme& scheme, std::span<const std::int64_t> grid);

double median(std::vector<double> values);

}  // namespace asclt
