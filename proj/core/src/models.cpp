#include "asclt/models.hpp"

#include "asclt/error.hpp"
#include "asclt/parallel.hpp"
#include "asclt/stats.hpp"
#include "parse_util.hpp"
#include "streams.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace asclt {

std::string_view to_string(IncrementLaw law) {
    switch (law) {
        case IncrementLaw::StandardNormal: return "normal";
        case IncrementLaw::Rademacher: return "rademacher";
        case IncrementLaw::UniformCentered: return "uniform";
        case IncrementLaw::ExponentialCentered: return "exponential";
    }
    return "unknown";
}

double LimitLaw::cdf(double x) const { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double LimitLaw::pdf(double x) const { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

bool LimitLaw::cdf_well_formed(double lo, double hi, double step) const {
    double prev = cdf(lo);
    if (prev > 1e-12) return false;
    for (double x = lo + step; x <= hi; x += step) {
        const double v = cdf(x);
        if (v < prev || v < 0.0 || v > 1.0) return false;
        prev = v;
    }
    return 1.0 - prev <= 1e-12;
}

double Normalization::scale(std::int64_t n) const {
    const auto x = static_cast<double>(n);
    if (exponent == 0.5) return std::sqrt(x);
    return std::pow(x, exponent);
}

SequenceModel SequenceModel::parse(std::string_view spec) {
    const auto [name, args] = detail::split_spec(spec);
    SequenceModel model;
    if (name == "normal") {
        model.law = IncrementLaw::StandardNormal;
    } else if (name == "rademacher") {
        model.law = IncrementLaw::Rademacher;
    } else if (name == "uniform") {
        model.law = IncrementLaw::UniformCentered;
    } else if (name == "exponential") {
        model.law = IncrementLaw::ExponentialCentered;
    } else {
        throw UsageError("unknown model '" + std::string(spec) + "'");
    }
    if (args.empty()) return model;
    for (const auto option : detail::split(args, ',')) {
        const auto eq = option.find('=');
        require(eq != std::string_view::npos, "model option must be key=value: '" + std::string(option) + "'");
        const auto key = detail::trim(option.substr(0, eq));
        const auto value = detail::trim(option.substr(eq + 1));
        if (key == "a") {
            model.normalization.exponent = detail::parse_double(value, "normalization exponent");
            require(model.normalization.exponent > 0.0, "normalization exponent must be > 0");
        } else if (key == "b") {
            model.normalization.centering = detail::parse_double(value, "centering");
        } else if (key == "form") {
            if (value == "theorem") {
                model.form = CenteringForm::Theorem;
            } else if (value == "shifted") {
                model.form = CenteringForm::Shifted;
            } else {
                throw UsageError("centering form must be 'theorem' or 'shifted'");
            }
        } else {
            throw UsageError("unknown model option '" + std::string(key) + "'");
        }
    }
    return model;
}

std::string SequenceModel::describe() const {
    std::ostringstream out;
    out << to_string(law) << ":a=" << normalization.exponent << ",b=" << normalization.centering
        << ",form=" << (form == CenteringForm::Theorem ? "theorem" : "shifted");
    return out.str();
}

double SequenceModel::draw(Rng& rng) const {
    switch (law) {
        case IncrementLaw::StandardNormal: return rng.normal();
        case IncrementLaw::Rademacher: return rng.coin() ? 1.0 : -1.0;
        case IncrementLaw::UniformCentered: return std::numbers::sqrt3 * (2.0 * rng.uniform() - 1.0);
        case IncrementLaw::ExponentialCentered: return -std::log1p(-rng.uniform()) - 1.0;
    }
    return 0.0;
}

double SequenceModel::normalize(double partial_sum, std::int64_t n) const {
    const double a = normalization.scale(n);
    const double b = normalization.centering;
    if (form == CenteringForm::Theorem) return partial_sum / a - b;
    return (partial_sum - b) / a;
}

PathStream::PathStream(const SequenceModel& model, std::uint64_t seed) : model_(&model), rng_(seed) {}

double PathStream::next() {
    sum_ += model_->draw(rng_);
    ++k_;
    return sum_.value();
}

PathSample simulate_path(const SequenceModel& model, std::int64_t n, std::uint64_t seed) {
    require(n >= 1, "simulate_path: N must be >= 1");
    PathSample path;
    path.n = n;
    path.seed = seed;
    path.model_id = model.describe();
    path.partial_sums.reserve(static_cast<std::size_t>(n));
    path.normalized.reserve(static_cast<std::size_t>(n));
    PathStream stream(model, derive_seed(seed, streams::kPath, 0));
    for (std::int64_t k = 1; k <= n; ++k) {
        const double s = stream.next();
        path.partial_sums.push_back(s);
        path.normalized.push_back(model.normalize(s, k));
    }
    return path;
}

ConditionReport check_c4_growth(const SequenceModel& model, double c, double beta,
                                std::span<const std::pair<std::int64_t, std::int64_t>> pairs) {
    require(c > 0.0, "check_c4_growth: C must be > 0");
    require(beta > 0.0 && beta <= 1.0, "check_c4_growth: beta must lie in (0,1]");
    require(!pairs.empty(), "check_c4_growth: no (k,l) pairs");

    ConditionReport report;
    report.condition = Condition::C4Growth;
    report.threshold = 1.0;
    report.sup_statistic = -std::numeric_limits<double>::infinity();
    const double h = model.normalization.exponent;
    const double log_c = std::log(c);
    for (const auto& [k, l] : pairs) {
        require(k >= 1, "check_c4_growth: indices must be >= 1");
        if (k > l) throw UsageError("check_c4_growth: pair (" + std::to_string(k) + "," + std::to_string(l) +
                                    ") has k > l");
        // log[(a_k/a_l) / (C (k/l)^beta)] = (h - beta)(log k - log l) - log C
        const double log_ratio = std::log(static_cast<double>(k)) - std::log(static_cast<double>(l));
        const double stat = std::exp((h - beta) * log_ratio - log_c);
        report.trace.emplace_back(l, stat);
        if (stat > 1.0) report.violation_indices.push_back(static_cast<std::int64_t>(report.trace.size() - 1));
        report.sup_statistic = std::max(report.sup_statistic, stat);
    }
    report.finalize();
    return report;
}

ConditionReport estimate_mu_moment(const SequenceModel& model, std::span<const std::int64_t> n_grid, int mu,
                                   std::int64_t reps, std::uint64_t seed, unsigned threads) {
    require(mu >= 2, "estimate_mu_moment: mu must be an integer >= 2");
    require(reps >= kMinReplicas, "estimate_mu_moment: reps must be >= 1000");
    require(!n_grid.empty(), "estimate_mu_moment: empty n grid");
    for (const auto n : n_grid) require(n >= 1, "estimate_mu_moment: n must be >= 1");

    ConditionReport report;
    report.condition = Condition::MuMoment;
    std::vector<double> values(static_cast<std::size_t>(reps));
    std::vector<Estimate> estimates;
    for (std::size_t g = 0; g < n_grid.size(); ++g) {
        const std::int64_t n = n_grid[g];
        const auto blocks = split_blocks(values.size(), 256);
        parallel_for(blocks.size(), threads, [&](std::size_t b) {
            for (std::size_t r = blocks[b].begin; r < blocks[b].end; ++r) {
                PathStream stream(model, derive_seed(seed, streams::kMoment, (g << 40) | r));
                double s = 0.0;
                for (std::int64_t k = 0; k < n; ++k) s = stream.next();
                values[r] = abs_pow(model.normalize(s, n), mu);
            }
        });
        const Estimate e = mean_estimate(values);
        estimates.push_back(e);
        report.trace.emplace_back(n, e.mean);
        report.trace_se.push_back(e.se);
    }
    report.sup_statistic = -std::numeric_limits<double>::infinity();
    for (const auto& e : estimates) report.sup_statistic = std::max(report.sup_statistic, e.mean);
    const Estimate& first = estimates.front();
    const Estimate& last = estimates.back();
    if (last.mean > first.mean + 3.0 * std::hypot(first.se, last.se)) {
        report.violation_indices.push_back(n_grid.back());
    }
    report.finalize();
    return report;
}

}  // namespace asclt
