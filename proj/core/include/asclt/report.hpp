#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace asclt {

enum class Condition { C2, C3, Lemma1, Lemma5, C4Growth, MuMoment, Lipschitz, RatioConsecutive };

std::string_view to_string(Condition c);

/// Outcome of a deterministic or Monte Carlo condition check.
///
/// `violation_indices` holds the indices (weight index, grid position, ...)
/// that witness a failure. `pass` is always recomputed by finalize() as
/// sup_statistic <= threshold && violation_indices.empty().
struct ConditionReport {
    Condition condition = Condition::C2;
    double sup_statistic = 0.0;
    double threshold = std::numeric_limits<double>::infinity();
    std::vector<std::int64_t> violation_indices;
    std::vector<std::pair<std::int64_t, double>> trace;
    std::vector<double> trace_se;  // Monte Carlo checks only; parallel to trace
    bool pass = false;

    void finalize() { pass = sup_statistic <= threshold && violation_indices.empty(); }
};

}  // namespace asclt
