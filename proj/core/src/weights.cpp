#include "asclt/weights.hpp"

#include "asclt/compensated.hpp"
#include "asclt/error.hpp"
#include "asclt/stats.hpp"
#include "parse_util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace asclt {

namespace {

constexpr std::size_t kMaxRecordedViolations = 1024;

void record_violation(ConditionReport& report, std::int64_t index) {
    if (report.violation_indices.size() < kMaxRecordedViolations) report.violation_indices.push_back(index);
}

// Indices where a long scan is sampled into a trace: roughly 40 points per decade.
bool is_trace_point(std::int64_t k, std::int64_t first, std::int64_t last) {
    if (k == first || k == last || k <= 16) return true;
    const double x = std::log10(static_cast<double>(k)) * 40.0;
    const double prev = std::log10(static_cast<double>(k - 1)) * 40.0;
    return std::floor(x) != std::floor(prev);
}

void require_index_grid(std::span<const std::int64_t> grid, std::string_view who) {
    require(!grid.empty(), std::string(who) + ": empty grid");
    require(grid.front() >= 1, std::string(who) + ": grid values must be >= 1");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        require(grid[i] > grid[i - 1], std::string(who) + ": grid must be strictly increasing");
    }
}

}  // namespace

WeightScheme::WeightScheme(WeightFamily family, double parameter, std::vector<double> table)
    : family_(family), parameter_(parameter), table_(std::move(table)) {}

WeightScheme WeightScheme::harmonic() { return {WeightFamily::Harmonic, 0.0, {}}; }

WeightScheme WeightScheme::power_log(double gamma) {
    require(std::isfinite(gamma) && gamma >= 0.0, "PowerLog weights need gamma >= 0");
    return {WeightFamily::PowerLog, gamma, {}};
}

WeightScheme WeightScheme::power(double theta) {
    require(theta > 0.0 && theta <= 1.0, "Power weights need 0 < theta <= 1");
    return {WeightFamily::Power, theta, {}};
}

WeightScheme WeightScheme::custom(std::vector<double> table) {
    require(!table.empty(), "Custom weights need a non-empty table");
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (!(table[i] > 0.0) || !std::isfinite(table[i])) {
            throw UsageError("Custom weight d_" + std::to_string(i + 1) + " must be positive and finite");
        }
    }
    return {WeightFamily::Custom, 0.0, std::move(table)};
}

WeightScheme WeightScheme::load_custom(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open weight table " + path.string());
    std::vector<double> table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = detail::trim(line);
        if (text.empty()) {
            throw UsageError(path.string() + ":" + std::to_string(line_no) + ": empty line in weight table");
        }
        table.push_back(detail::parse_double(text, "weight on line " + std::to_string(line_no)));
    }
    return custom(std::move(table));
}

WeightScheme WeightScheme::parse(std::string_view spec) {
    const auto [name, args] = detail::split_spec(spec);
    if (name == "harmonic") return harmonic();
    if (name == "powerlog") return power_log(args.empty() ? 1.0 : detail::parse_double(args, "powerlog gamma"));
    if (name == "power") return power(detail::parse_double(args, "power theta"));
    if (name == "custom") {
        require(!args.empty(), "custom weights need a file: custom:<path>");
        return load_custom(std::filesystem::path(std::string(args)));
    }
    throw UsageError("unknown weight scheme '" + std::string(spec) + "'");
}

std::string WeightScheme::describe() const {
    std::ostringstream out;
    switch (family_) {
        case WeightFamily::Harmonic: out << "harmonic"; break;
        case WeightFamily::PowerLog: out << "powerlog:" << parameter_; break;
        case WeightFamily::Power: out << "power:" << parameter_; break;
        case WeightFamily::Custom: out << "custom[" << table_.size() << "]"; break;
    }
    return out.str();
}

std::int64_t WeightScheme::max_index() const {
    if (family_ == WeightFamily::Custom) return static_cast<std::int64_t>(table_.size());
    return std::numeric_limits<std::int64_t>::max();
}

double WeightScheme::at(std::int64_t k) const {
    if (k < 1) throw UsageError("weight index must be >= 1, got " + std::to_string(k));
    const auto x = static_cast<double>(k);
    switch (family_) {
        case WeightFamily::Harmonic: return 1.0 / x;
        case WeightFamily::Power: return std::pow(x, -parameter_);
        case WeightFamily::PowerLog:
            if (parameter_ == 0.0) return 1.0 / x;
            if (k == 1) return at(2);
            return std::pow(std::log(x), parameter_) / x;
        case WeightFamily::Custom:
            if (k > max_index()) {
                throw OutOfRangeError("custom weight table has " + std::to_string(table_.size()) +
                                      " entries, index " + std::to_string(k) + " requested");
            }
            return table_[static_cast<std::size_t>(k - 1)];
    }
    return 0.0;
}

double WeightScheme::k_times_weight(std::int64_t k) const {
    const auto x = static_cast<double>(k);
    switch (family_) {
        case WeightFamily::Harmonic: return 1.0;
        case WeightFamily::Power: return std::pow(x, 1.0 - parameter_);
        case WeightFamily::PowerLog:
            if (parameter_ == 0.0) return 1.0;
            if (k == 1) return at(2);
            return std::pow(std::log(x), parameter_);
        case WeightFamily::Custom: return x * at(k);
    }
    return 0.0;
}

double WeightScheme::log_scaled_weight(std::int64_t k, double alpha) const {
    const double log_k = std::log(static_cast<double>(k));
    switch (family_) {
        case WeightFamily::Harmonic: return (alpha - 1.0) * log_k;
        case WeightFamily::Power: return (alpha - parameter_) * log_k;
        case WeightFamily::PowerLog:
            if (parameter_ == 0.0) return (alpha - 1.0) * log_k;
            if (k == 1) return std::log(at(2));
            return parameter_ * std::log(log_k) + (alpha - 1.0) * log_k;
        case WeightFamily::Custom: return std::log(at(k)) + alpha * log_k;
    }
    return 0.0;
}

double weight_at(const WeightScheme& scheme, std::int64_t k) { return scheme.at(k); }

PrefixCache::PrefixCache(WeightScheme scheme, std::int64_t n) : scheme_(std::move(scheme)) {
    require(n >= 1, "prefix_sums: N must be >= 1");
    hi_.reserve(static_cast<std::size_t>(n));
    lo_.reserve(static_cast<std::size_t>(n));
    CompensatedSum sum;
    for (std::int64_t k = 1; k <= n; ++k) {
        sum += scheme_.at(k);
        hi_.push_back(sum.hi());
        lo_.push_back(sum.lo());
    }
}

double PrefixCache::at(std::int64_t n) const {
    require(n >= 1 && n <= size(), "PrefixCache: index out of range");
    const auto i = static_cast<std::size_t>(n - 1);
    return hi_[i] + lo_[i];
}

double PrefixCache::increment(std::int64_t n) const {
    require(n >= 1 && n <= size(), "PrefixCache: index out of range");
    const auto i = static_cast<std::size_t>(n - 1);
    if (i == 0) return hi_[0] + lo_[0];
    return (hi_[i] - hi_[i - 1]) + (lo_[i] - lo_[i - 1]);
}

std::vector<double> PrefixCache::values() const {
    std::vector<double> out(hi_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = hi_[i] + lo_[i];
    return out;
}

PrefixCache prefix_sums(const WeightScheme& scheme, std::int64_t n) { return PrefixCache(scheme, n); }

double weight_total(const WeightScheme& scheme, std::int64_t n) {
    require(n >= 1, "weight_total: N must be >= 1");
    CompensatedSum sum;
    for (std::int64_t k = 1; k <= n; ++k) sum += scheme.at(k);
    return sum.value();
}

ConditionReport check_c2(const WeightScheme& scheme, double alpha, std::int64_t burnin, std::int64_t k_max,
                         double threshold) {
    require(alpha > 0.0 && alpha < 1.0, "check_c2: alpha must lie in (0,1)");
    require(burnin >= 1, "check_c2: burn-in must be >= 1");
    require(burnin < k_max, "check_c2: burn-in must be below K");

    ConditionReport report;
    report.condition = Condition::C2;
    report.threshold = threshold;

    const std::int64_t upper_half = 1 + k_max / 2;
    double running_max = -std::numeric_limits<double>::infinity();
    double scaled_prev = scheme.log_scaled_weight(1, alpha);
    for (std::int64_t k = 1; k <= k_max; ++k) {
        const double kd = scheme.k_times_weight(k);
        if (kd > running_max) {
            if (k >= upper_half && k > 1) record_violation(report, k);
            running_max = kd;
        }
        if (k < k_max) {
            const double scaled_next = scheme.log_scaled_weight(k + 1, alpha);
            if (k >= burnin && scaled_prev < scaled_next) record_violation(report, k);
            scaled_prev = scaled_next;
        }
        if (is_trace_point(k, 1, k_max)) report.trace.emplace_back(k, kd);
    }
    std::sort(report.violation_indices.begin(), report.violation_indices.end());
    report.violation_indices.erase(std::unique(report.violation_indices.begin(), report.violation_indices.end()),
                                   report.violation_indices.end());
    report.sup_statistic = running_max;
    report.finalize();
    return report;
}

ConditionReport check_c3(const WeightScheme& scheme, double rho, std::int64_t k_max) {
    require(rho > 0.0, "check_c3: rho must be > 0");
    require(k_max >= 1, "check_c3: K must be >= 1");

    ConditionReport report;
    report.condition = Condition::C3;

    CompensatedSum total;
    std::int64_t k0 = 0;
    for (std::int64_t k = 1; k <= k_max; ++k) {
        total += scheme.at(k);
        if (total.value() > std::numbers::e) {
            k0 = k;
            break;
        }
    }
    if (k0 == 0) {
        throw UsageError("check_c3: empty evaluation range, D_k <= e for every k <= " + std::to_string(k_max));
    }

    const std::int64_t upper_half = k0 + (k_max - k0 + 1) / 2;
    double running_max = -std::numeric_limits<double>::infinity();
    for (std::int64_t k = k0; k <= k_max; ++k) {
        if (k > k0) total += scheme.at(k);
        const double d = total.value();
        const double stat = scheme.k_times_weight(k) * std::pow(std::log(d), rho) / d;
        if (stat > running_max) {
            if (k > k0 && k >= upper_half) record_violation(report, k);
            running_max = stat;
        }
        if (is_trace_point(k, k0, k_max)) report.trace.emplace_back(k, stat);
    }
    report.sup_statistic = running_max;
    report.finalize();
    return report;
}

ConditionReport lemma1_trace(const WeightScheme& scheme, double epsilon, std::span<const std::int64_t> grid) {
    require(epsilon > 0.0, "lemma1_trace: epsilon must be > 0");
    require_index_grid(grid, "lemma1_trace");

    ConditionReport report;
    report.condition = Condition::Lemma1;

    CompensatedSum total;
    std::int64_t k = 0;
    std::vector<double> ratios;
    for (const std::int64_t n : grid) {
        while (k < n) total += scheme.at(++k);
        const double ratio = total.value() / std::pow(static_cast<double>(n), epsilon);
        ratios.push_back(ratio);
        report.trace.emplace_back(n, ratio);
    }
    report.sup_statistic = *std::max_element(ratios.begin(), ratios.end());

    const std::size_t tail = std::max<std::size_t>(1, ratios.size() / 2);
    for (std::size_t i = tail; i < ratios.size(); ++i) {
        if (!(ratios[i] < ratios[i - 1])) record_violation(report, grid[i]);
    }
    if (!(ratios.back() < ratios.front())) record_violation(report, grid.back());
    std::sort(report.violation_indices.begin(), report.violation_indices.end());
    report.violation_indices.erase(std::unique(report.violation_indices.begin(), report.violation_indices.end()),
                                   report.violation_indices.end());
    report.finalize();
    return report;
}

PowerSumCache::PowerSumCache(WeightScheme scheme, double beta) : scheme_(std::move(scheme)), beta_(beta) {}

double PowerSumCache::at(std::int64_t l) {
    require(l >= 1, "power_sum: l must be >= 1");
    while (static_cast<std::int64_t>(values_.size()) < l) {
        const auto k = static_cast<std::int64_t>(values_.size()) + 1;
        running_ += scheme_.at(k) * std::pow(static_cast<double>(k), beta_);
        values_.push_back(running_.value());
    }
    return values_[static_cast<std::size_t>(l - 1)];
}

double power_sum(const WeightScheme& scheme, double beta, std::int64_t l) {
    require(l >= 1, "power_sum: l must be >= 1");
    CompensatedSum sum;
    for (std::int64_t k = 1; k <= l; ++k) sum += scheme.at(k) * std::pow(static_cast<double>(k), beta);
    return sum.value();
}

double v_quantity(const WeightScheme& scheme, double beta, std::int64_t m, std::int64_t n) {
    require(m >= 1, "v_quantity: m must be >= 1");
    require(m <= n, "v_quantity: m must not exceed n");
    CompensatedSum inner;
    CompensatedSum outer;
    for (std::int64_t l = 1; l <= n; ++l) {
        const double d = scheme.at(l);
        const double x = static_cast<double>(l);
        inner += d * std::pow(x, beta);
        if (l >= m) outer += d * std::pow(x, -beta) * inner.value();
    }
    return outer.value();
}

namespace {

std::vector<double> double_sums_fast(const WeightScheme& scheme, double alpha, std::span<const std::int64_t> grid) {
    std::vector<double> out;
    out.reserve(grid.size());
    CompensatedSum inner;
    CompensatedSum outer;
    std::int64_t l = 0;
    for (const std::int64_t n : grid) {
        while (l < n) {
            ++l;
            const double d = scheme.at(l);
            const double x = static_cast<double>(l);
            inner += d * std::pow(x, alpha);
            outer += d * std::pow(x, -alpha) * inner.value();
        }
        out.push_back(outer.value());
    }
    return out;
}

std::vector<double> double_sums_brute(const WeightScheme& scheme, double alpha, std::span<const std::int64_t> grid) {
    std::vector<double> out;
    out.reserve(grid.size());
    std::vector<double> d(static_cast<std::size_t>(grid.back()));
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = scheme.at(static_cast<std::int64_t>(i) + 1);

    CompensatedSum total;
    std::int64_t l = 0;
    for (const std::int64_t n : grid) {
        while (l < n) {
            ++l;
            const double x = static_cast<double>(l);
            CompensatedSum row;
            for (std::int64_t k = 1; k <= l; ++k) {
                row += d[static_cast<std::size_t>(k - 1)] * std::pow(static_cast<double>(k) / x, alpha);
            }
            total += d[static_cast<std::size_t>(l - 1)] * row.value();
        }
        out.push_back(total.value());
    }
    return out;
}

}  // namespace

std::vector<double> weighted_double_sums(const WeightScheme& scheme, double alpha,
                                         std::span<const std::int64_t> grid, SumMode mode) {
    require_index_grid(grid, "weighted_double_sums");
    switch (mode) {
        case SumMode::Fast: return double_sums_fast(scheme, alpha, grid);
        case SumMode::BruteForce: return double_sums_brute(scheme, alpha, grid);
        case SumMode::Checked: {
            auto fast = double_sums_fast(scheme, alpha, grid);
            const auto brute = double_sums_brute(scheme, alpha, grid);
            for (std::size_t i = 0; i < fast.size(); ++i) {
                const double rel = std::abs(fast[i] - brute[i]) / std::abs(brute[i]);
                if (!(rel <= kFactorizationTolerance)) {
                    std::ostringstream msg;
                    msg << "factorized double sum disagrees with direct loop at N=" << grid[i]
                        << " (relative difference " << rel << ")";
                    throw ConsistencyError(msg.str());
                }
            }
            return fast;
        }
    }
    return {};
}

double weighted_double_sum(const WeightScheme& scheme, double alpha, std::int64_t n, SumMode mode) {
    const std::int64_t grid[] = {n};
    return weighted_double_sums(scheme, alpha, grid, mode).front();
}

ConditionReport lemma5_ratio(const WeightScheme& scheme, double alpha, double eta,
                             std::span<const std::int64_t> grid, SumMode mode, double rho) {
    require(alpha > 0.0, "lemma5_ratio: alpha must be > 0");
    if (rho > 0.0) require(eta < rho, "lemma5_ratio: eta must be < rho");
    const auto sums = weighted_double_sums(scheme, alpha, grid, mode);

    ConditionReport report;
    report.condition = Condition::Lemma5;

    CompensatedSum total;
    std::int64_t k = 0;
    std::vector<double> ratios;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        while (k < grid[i]) total += scheme.at(++k);
        const double d = total.value();
        if (!(d > std::numbers::e)) continue;
        const double ratio = sums[i] * std::pow(std::log(d), eta) / (d * d);
        ratios.push_back(ratio);
        report.trace.emplace_back(grid[i], ratio);
    }
    require(!ratios.empty(), "lemma5_ratio: no grid point with D_N > e");
    report.sup_statistic = *std::max_element(ratios.begin(), ratios.end());
    for (const std::size_t pos : late_new_maxima(ratios)) report.violation_indices.push_back(report.trace[pos].first);
    report.finalize();
    return report;
}

ConditionReport lemma5_ratio(const WeightScheme& scheme, double alpha, double eta, std::int64_t n, SumMode mode,
                             double rho) {
    const auto grid = decade_grid(std::min<std::int64_t>(10, n), n);
    return lemma5_ratio(scheme, alpha, eta, grid, mode, rho);
}

std::vector<std::int64_t> decade_grid(std::int64_t lo, std::int64_t hi) {
    require(lo >= 1 && lo <= hi, "decade_grid: need 1 <= lo <= hi");
    std::vector<std::int64_t> grid;
    for (std::int64_t n = lo; n <= hi; n *= 10) {
        grid.push_back(n);
        if (n > std::numeric_limits<std::int64_t>::max() / 10) break;
    }
    if (grid.back() != hi) grid.push_back(hi);
    return grid;
}

std::vector<std::int64_t> power_of_two_grid(int lo_exp, int hi_exp) {
    require(lo_exp >= 0 && lo_exp <= hi_exp && hi_exp < 62, "power_of_two_grid: bad exponents");
    std::vector<std::int64_t> grid;
    for (int e = lo_exp; e <= hi_exp; ++e) grid.push_back(std::int64_t{1} << e);
    return grid;
}

}  // namespace asclt
