#include "asclt/averaging.hpp"

#include "asclt/error.hpp"
#include "asclt/parallel.hpp"
#include "streams.hpp"

#include <algorithm>
#include <cmath>

namespace asclt {

void LogAverageAccumulator::add(double weight, double value) {
    if (!(weight > 0.0)) throw UsageError("accumulate: weight must be > 0");
    if (next_k_ == 1) shift_ = value;
    weighted_ += weight * (value - shift_);
    total_ += weight;
    ++next_k_;
}

double LogAverageAccumulator::average() const {
    require(next_k_ > 1, "LogAverageAccumulator: average of an empty accumulator");
    return shift_ + weighted_.value() / total_.value();
}

double LogAverageAccumulator::weighted_sum() const { return weighted_.value() + shift_ * total_.value(); }

LogAverageAccumulator accumulate(LogAverageAccumulator acc, double weight, double value) {
    acc.add(weight, value);
    return acc;
}

double median(std::vector<double> values) {
    require(!values.empty(), "median of empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return 0.5 * (values[mid - 1] + values[mid]);
}

ConvergenceTrace run_experiment(const SequenceModel& model, const WeightScheme& scheme, const LipschitzFunction& f,
                                std::int64_t n_max, std::span<const std::int64_t> checkpoints,
                                std::span<const std::uint64_t> seeds, unsigned threads) {
    require(n_max >= 1, "run_experiment: N_max must be >= 1");
    require(!seeds.empty(), "run_experiment: no seeds");
    require(!checkpoints.empty(), "run_experiment: no checkpoints");
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        require(checkpoints[i] >= 1, "run_experiment: checkpoints must be >= 1");
        if (checkpoints[i] > n_max) {
            throw UsageError("run_experiment: checkpoint " + std::to_string(checkpoints[i]) + " exceeds N_max");
        }
        if (i > 0) require(checkpoints[i] > checkpoints[i - 1], "run_experiment: checkpoints must increase");
    }
    require(n_max <= scheme.max_index(), "run_experiment: N_max exceeds the custom weight table");

    ConvergenceTrace trace;
    trace.checkpoints.assign(checkpoints.begin(), checkpoints.end());
    trace.seeds.assign(seeds.begin(), seeds.end());
    trace.target = integral_against(f, model.limit).value;
    trace.per_seed.assign(seeds.size(), std::vector<double>(checkpoints.size()));

    const std::int64_t last = checkpoints.back();
    parallel_for(seeds.size(), threads, [&](std::size_t s) {
        PathStream path(model, derive_seed(seeds[s], streams::kPath, 0));
        LogAverageAccumulator acc;
        std::size_t next_checkpoint = 0;
        for (std::int64_t k = 1; k <= last; ++k) {
            const double t = model.normalize(path.next(), k);
            acc.add(scheme.at(k), f(t));
            if (k == checkpoints[next_checkpoint]) {
                trace.per_seed[s][next_checkpoint] = acc.average();
                ++next_checkpoint;
            }
        }
    });

    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
        std::vector<double> errors;
        errors.reserve(seeds.size());
        for (const auto& row : trace.per_seed) errors.push_back(std::abs(row[c] - trace.target));
        trace.max_abs_error.push_back(*std::max_element(errors.begin(), errors.end()));
        trace.median_abs_error.push_back(median(std::move(errors)));
    }
    return trace;
}

bool median_error_decreasing(const ConvergenceTrace& trace, std::size_t count) {
    const auto& m = trace.median_abs_error;
    if (count < 2 || m.size() < count) return false;
    for (std::size_t i = m.size() - count + 1; i < m.size(); ++i) {
        if (!(m[i] < m[i - 1])) return false;
    }
    return true;
}

std::vector<std::int64_t> subsequence_checkpoints(const WeightScheme& scheme, int j_max, std::int64_t n_cap) {
    require(j_max >= 1, "subsequence_checkpoints: j_max must be >= 1");
    require(n_cap >= 1, "subsequence_checkpoints: N cap must be >= 1");
    const std::int64_t cap = std::min(n_cap, scheme.max_index());
    std::vector<std::int64_t> out;
    CompensatedSum total;
    std::int64_t n = 0;
    for (int j = 1; j <= j_max; ++j) {
        const double level = std::exp(std::sqrt(static_cast<double>(j)));
        while (n < cap && !(n > 0 && total.value() >= level)) total += scheme.at(++n);
        if (!(total.value() >= level)) break;
        if (out.empty() || out.back() != n) out.push_back(n);
    }
    return out;
}

std::vector<std::int64_t> default_checkpoints(const WeightScheme& scheme, std::int64_t n_max) {
    auto points = subsequence_checkpoints(scheme, 1 << 20, n_max);
    const auto decades = decade_grid(1, n_max);
    points.insert(points.end(), decades.begin(), decades.end());
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

ConditionReport ratio_consecutive(const WeightScheme& scheme, std::span<const std::int64_t> grid) {
    require(!grid.empty(), "ratio_consecutive: empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        require(grid[i] >= 1, "ratio_consecutive: grid values must be >= 1");
        if (i > 0) require(grid[i] >= grid[i - 1], "ratio_consecutive: grid must be non-decreasing");
    }
    ConditionReport report;
    report.condition = Condition::RatioConsecutive;
    report.threshold = 1e-3;
    CompensatedSum total;
    std::int64_t k = 0;
    for (const std::int64_t n : grid) {
        while (k < n) total += scheme.at(++k);
        const double d_n = total.value();
        CompensatedSum next = total;
        next += scheme.at(n + 1);
        report.trace.emplace_back(n, next.value() / d_n);
    }
    // sup_statistic is the distance of the final ratio from 1.
    report.sup_statistic = std::abs(report.trace.back().second - 1.0);
    report.finalize();
    return report;
}

}  // namespace asclt
