#pragma once

#include "asclt/compensated.hpp"
#include "asclt/report.hpp"

#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asclt {

enum class WeightFamily { Harmonic, PowerLog, Power, Custom };

/// A positive weight sequence d_1, d_2, ... defining a summation procedure.
///
///   Harmonic       d_k = 1/k
///   PowerLog(g)    d_k = (log k)^g / k, with d_1 := d_2 when g > 0
///   Power(t)       d_k = k^-t, 0 < t <= 1
///   Custom         explicit finite table
class WeightScheme {
public:
    static WeightScheme harmonic();
    static WeightScheme power_log(double gamma);
    static WeightScheme power(double theta);
    static WeightScheme custom(std::vector<double> table);

    /// One positive decimal per line; line number is the 1-based index.
    static WeightScheme load_custom(const std::filesystem::path& path);

    /// "harmonic", "powerlog:<gamma>", "power:<theta>", "custom:<file>".
    static WeightScheme parse(std::string_view spec);

    WeightFamily family() const { return family_; }
    double parameter() const { return parameter_; }
    std::span<const double> table() const { return table_; }
    std::string describe() const;

    /// d_k. Throws UsageError for k < 1, OutOfRangeError past a Custom table.
    double at(std::int64_t k) const;

    /// k * d_k, evaluated so that Harmonic gives exactly 1.
    double k_times_weight(std::int64_t k) const;

    /// log(d_k * k^alpha), evaluated per family so that monotone families
    /// stay monotone after rounding.
    double log_scaled_weight(std::int64_t k, double alpha) const;

    /// Largest valid index (INT64_MAX for the infinite families).
    std::int64_t max_index() const;

private:
    WeightScheme(WeightFamily family, double parameter, std::vector<double> table);

    WeightFamily family_ = WeightFamily::Harmonic;
    double parameter_ = 0.0;
    std::vector<double> table_;
};

double weight_at(const WeightScheme& scheme, std::int64_t k);

/// D_1..D_N held as unevaluated compensated pairs, so that d_N can be
/// recovered by differencing without cancellation.
class PrefixCache {
public:
    PrefixCache(WeightScheme scheme, std::int64_t n);

    const WeightScheme& scheme() const { return scheme_; }
    std::int64_t size() const { return static_cast<std::int64_t>(hi_.size()); }

    /// D_n for 1 <= n <= size().
    double at(std::int64_t n) const;

    /// D_n - D_{n-1}, evaluated on the compensated representation (D_0 = 0).
    double increment(std::int64_t n) const;

    std::vector<double> values() const;

private:
    WeightScheme scheme_;
    std::vector<double> hi_;
    std::vector<double> lo_;
};

PrefixCache prefix_sums(const WeightScheme& scheme, std::int64_t n);

/// D_n by a single streaming pass (no table kept).
double weight_total(const WeightScheme& scheme, std::int64_t n);

/// Condition (C2): k d_k bounded and d_k k^alpha eventually non-increasing.
///
/// Violations are (a) indices k in [burnin, K) with d_k k^a < d_{k+1} (k+1)^a
/// and (b) indices in the upper half of [1, K] where k d_k reaches a new
/// running maximum, i.e. numerical evidence that k d_k is unbounded.
ConditionReport check_c2(const WeightScheme& scheme, double alpha, std::int64_t burnin, std::int64_t k_max,
                         double threshold = std::numeric_limits<double>::infinity());

inline constexpr std::int64_t kDefaultBurnin = 64;

/// Condition (C3): d_k k (log D_k)^rho / D_k bounded, evaluated from the
/// first k with D_k > e. Passes when the running maximum does not move in
/// the upper half of the evaluated range.
ConditionReport check_c3(const WeightScheme& scheme, double rho, std::int64_t k_max);

/// D_N / N^epsilon over an increasing grid. Passes when the last value is
/// below the first and the upper half of the trace is strictly decreasing.
ConditionReport lemma1_trace(const WeightScheme& scheme, double epsilon, std::span<const std::int64_t> grid);

/// Running sums P_l = sum_{k<=l} d_k k^beta, extended on demand.
class PowerSumCache {
public:
    PowerSumCache(WeightScheme scheme, double beta);

    /// P_l; amortized O(1) for successive l.
    double at(std::int64_t l);

    double beta() const { return beta_; }

private:
    WeightScheme scheme_;
    double beta_;
    CompensatedSum running_;
    std::vector<double> values_;
};

double power_sum(const WeightScheme& scheme, double beta, std::int64_t l);

/// V_{m,n} = sum_{l=m}^n d_l l^-beta P_l in O(n).
double v_quantity(const WeightScheme& scheme, double beta, std::int64_t m, std::int64_t n);

enum class SumMode { Fast, BruteForce, Checked };

/// S(N) = sum_{1<=k<=l<=N} d_k d_l (k/l)^alpha at every grid point.
///
/// Fast uses S(N) = sum_l d_l l^-alpha P_l (O(N)); BruteForce the direct
/// double loop (O(N^2)); Checked runs both and throws ConsistencyError when
/// they differ by more than kFactorizationTolerance relative.
std::vector<double> weighted_double_sums(const WeightScheme& scheme, double alpha,
                                         std::span<const std::int64_t> grid, SumMode mode);

double weighted_double_sum(const WeightScheme& scheme, double alpha, std::int64_t n, SumMode mode);

inline constexpr double kFactorizationTolerance = 1e-10;

/// Ratio trace R(N) = S(N) (log D_N)^eta / D_N^2 over `grid` (grid points
/// with D_N <= e are skipped). Passes when the running maximum of R does not
/// move in the upper half of the trace. If `rho` is positive, eta < rho is
/// enforced.
ConditionReport lemma5_ratio(const WeightScheme& scheme, double alpha, double eta,
                             std::span<const std::int64_t> grid, SumMode mode, double rho = 0.0);

/// Same, on decade_grid(10, n).
ConditionReport lemma5_ratio(const WeightScheme& scheme, double alpha, double eta, std::int64_t n, SumMode mode,
                             double rho = 0.0);

/// lo, 10 lo, 100 lo, ... up to hi; hi is appended when it is not a decade.
std::vector<std::int64_t> decade_grid(std::int64_t lo, std::int64_t hi);

/// 2^lo_exp .. 2^hi_exp.
std::vector<std::int64_t> power_of_two_grid(int lo_exp, int hi_exp);

}  // namespace asclt
