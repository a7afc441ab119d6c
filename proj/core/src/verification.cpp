#include "asclt/verification.hpp"

#include "asclt/error.hpp"
#include "asclt/parallel.hpp"
#include "streams.hpp"

#include <algorithm>
#include <cmath>

namespace asclt {

std::string_view to_string(Lemma lemma) {
    switch (lemma) {
        case Lemma::L2: return "L2";
        case Lemma::L3: return "L3";
        case Lemma::L4: return "L4";
    }
    return "unknown";
}

namespace {

void require_lemma_model(const SequenceModel& model, std::string_view who) {
    require(model.centered(), std::string(who) + ": requires b_n = 0");
}

void require_replicas(const MonteCarloOptions& options, std::string_view who) {
    require(options.reps >= kMinReplicas, std::string(who) + ": reps must be >= 1000");
}

void require_grid(std::span<const std::int64_t> grid, std::string_view who) {
    require(!grid.empty(), std::string(who) + ": empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        require(grid[i] > grid[i - 1], std::string(who) + ": grid must be strictly increasing");
    }
}

std::vector<double> weight_table(const WeightScheme& scheme, std::int64_t n) {
    require(n <= scheme.max_index(), "grid exceeds the custom weight table");
    std::vector<double> d(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = scheme.at(static_cast<std::int64_t>(i) + 1);
    return d;
}

// Per-index sums of (value - shift) and their squares.
struct ColumnSums {
    explicit ColumnSums(std::size_t n) : sum(n), squares(n) {}

    void add(std::size_t i, double centred) {
        sum[i] += centred;
        squares[i] += centred * centred;
    }

    void merge(const ColumnSums& other) {
        for (std::size_t i = 0; i < sum.size(); ++i) {
            sum[i].merge(other.sum[i]);
            squares[i].merge(other.squares[i]);
        }
    }

    std::vector<Estimate> estimates(double shift, std::int64_t count) const {
        const auto n = static_cast<double>(count);
        std::vector<Estimate> out(sum.size());
        for (std::size_t i = 0; i < sum.size(); ++i) {
            const double s = sum[i].value();
            const double variance = std::max(0.0, (squares[i].value() - s * s / n) / (n - 1.0));
            out[i] = {shift + s / n, std::sqrt(variance / n)};
        }
        return out;
    }

    std::vector<CompensatedSum> sum;
    std::vector<CompensatedSum> squares;
};

// Column-wise mean/se of a row-major replicas x columns matrix.
std::vector<Estimate> column_estimates(const std::vector<double>& values, std::size_t columns) {
    const std::size_t rows = values.size() / columns;
    std::vector<Estimate> out;
    std::vector<double> column(rows);
    for (std::size_t c = 0; c < columns; ++c) {
        for (std::size_t r = 0; r < rows; ++r) column[r] = values[r * columns + c];
        out.push_back(mean_estimate(column));
    }
    return out;
}

}  // namespace

XiMeanTable::XiMeanTable(const SequenceModel& model, const LipschitzFunction& f, std::int64_t n_max,
                         std::int64_t lag, const MonteCarloOptions& options) {
    require(n_max >= 1, "XiMeanTable: n_max must be >= 1");
    require(lag <= n_max, "XiMeanTable: lag exceeds n_max");
    const auto n = static_cast<std::size_t>(n_max);
    const bool want_lagged = lag >= 0;

    if (options.mean_source == MeanSource::Auto) {
        std::optional<double> known;
        if (f.is_constant()) {
            known = f(0.0);
        } else if (f.odd() && model.symmetric() && model.centered()) {
            known = 0.0;
        }
        if (known) {
            exact_ = true;
            level_.assign(n, {*known, 0.0});
            if (want_lagged) lagged_ = level_;
            return;
        }
    }

    require(options.mean_reps >= 2, "XiMeanTable: mean_reps must be >= 2");
    const double shift = f(0.0);
    const auto blocks = split_blocks(static_cast<std::size_t>(options.mean_reps),
                                     std::clamp<std::size_t>(4'000'000 / n, 1, 64));
    std::vector<ColumnSums> level_parts(blocks.size(), ColumnSums(0));
    std::vector<ColumnSums> lagged_parts(blocks.size(), ColumnSums(0));

    parallel_for(blocks.size(), options.threads, [&](std::size_t b) {
        ColumnSums level(n);
        ColumnSums lagged(want_lagged && lag > 0 ? n : 0);
        std::vector<double> path(n);
        for (std::size_t r = blocks[b].begin; r < blocks[b].end; ++r) {
            PathStream stream(model, derive_seed(options.mean_seed, streams::kMeanTable, r));
            for (std::size_t i = 0; i < n; ++i) path[i] = stream.next();
            for (std::size_t i = 0; i < n; ++i) {
                const auto l = static_cast<std::int64_t>(i) + 1;
                level.add(i, f(model.normalize(path[i], l)) - shift);
                if (want_lagged && lag > 0) {
                    const std::int64_t j = l - lag;
                    const double increment = j > 0 ? path[static_cast<std::size_t>(j - 1)] : 0.0;
                    lagged.add(i, f(increment / model.normalization.scale(l)) - shift);
                }
            }
        }
        level_parts[b] = std::move(level);
        lagged_parts[b] = std::move(lagged);
    });

    ColumnSums level(n);
    for (const auto& part : level_parts) level.merge(part);
    level_ = level.estimates(shift, options.mean_reps);
    if (!want_lagged) return;
    if (lag == 0) {
        lagged_ = level_;
        return;
    }
    ColumnSums lagged(n);
    for (const auto& part : lagged_parts) lagged.merge(part);
    lagged_ = lagged.estimates(shift, options.mean_reps);
}

void BoundReport::finalize() {
    const std::size_t rows = lhs.size();
    ratio.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) ratio[i] = std::abs(lhs[i]) / rhs_structural[i];
    if (rows == 0) {
        pass = false;
        return;
    }
    const std::size_t first_half = (rows + 1) / 2;
    ceiling = 0.0;
    for (std::size_t i = 0; i < first_half; ++i) {
        ceiling = std::max(ceiling, (std::abs(lhs[i]) + 2.0 * se[i]) / rhs_structural[i]);
    }
    pass = true;
    for (std::size_t i = first_half; i < rows; ++i) {
        if ((std::abs(lhs[i]) - 2.0 * se[i]) / rhs_structural[i] > ceiling) pass = false;
    }
}

double lemma3_prefactor_shape(double beta) {
    require(beta > 0.0, "beta must be > 0");
    const double kappa = 2.0 * beta;
    return std::max(std::pow(2.0, kappa) / kappa, 1.0 + 1.0 / kappa);
}

BoundReport lemma2_check(const SequenceModel& model, const LipschitzFunction& f,
                         std::span<const std::pair<std::int64_t, std::int64_t>> pairs, double beta,
                         const MonteCarloOptions& options) {
    require_lemma_model(model, "lemma2_check");
    require_replicas(options, "lemma2_check");
    require(!pairs.empty(), "lemma2_check: no (k,l) pairs");
    require(beta > 0.0, "lemma2_check: beta must be > 0");
    for (const auto& [k, l] : pairs) {
        require(k >= 1, "lemma2_check: indices must be >= 1");
        if (k > l) throw UsageError("lemma2_check: pair (" + std::to_string(k) + "," + std::to_string(l) +
                                    ") has k > l");
    }

    std::vector<std::pair<std::int64_t, std::int64_t>> ordered(pairs.begin(), pairs.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        return static_cast<double>(a.second) / static_cast<double>(a.first) <
               static_cast<double>(b.second) / static_cast<double>(b.first);
    });

    BoundReport report;
    report.lemma = Lemma::L2;
    report.grid_fields = {"k", "l"};
    const auto reps = static_cast<std::size_t>(options.reps);
    std::vector<double> x(reps);
    std::vector<double> y(reps);
    for (std::size_t p = 0; p < ordered.size(); ++p) {
        const auto [k, l] = ordered[p];
        const auto blocks = split_blocks(reps, 256);
        parallel_for(blocks.size(), options.threads, [&, k = k, l = l](std::size_t b) {
            for (std::size_t r = blocks[b].begin; r < blocks[b].end; ++r) {
                PathStream stream(model, derive_seed(options.seed, streams::kLemma2, (p << 40) | r));
                double s_k = 0.0;
                double s = 0.0;
                for (std::int64_t i = 1; i <= l; ++i) {
                    s = stream.next();
                    if (i == k) s_k = s;
                }
                x[r] = f(model.normalize(s_k, k));
                y[r] = f(model.normalize(s, l));
            }
        });
        const Estimate cov = covariance_estimate(x, y);
        report.grid.push_back({k, l});
        report.lhs.push_back(cov.mean);
        report.se.push_back(cov.se);
        report.rhs_structural.push_back(std::pow(static_cast<double>(k) / static_cast<double>(l), beta));
    }
    report.scalars.emplace_back("beta", beta);
    report.finalize();
    return report;
}

BoundReport lemma3_check(const SequenceModel& model, const WeightScheme& scheme, const LipschitzFunction& f,
                         std::int64_t k, std::int64_t m, std::span<const std::int64_t> n_grid, int p, double beta,
                         const MonteCarloOptions& options) {
    require_lemma_model(model, "lemma3_check");
    require_replicas(options, "lemma3_check");
    require(p >= 1, "lemma3_check: p must be >= 1");
    require(beta > 0.0, "lemma3_check: beta must be > 0");
    require(k >= 0, "lemma3_check: k must be >= 0");
    require(m >= 1, "lemma3_check: m must be >= 1");
    if (k > m) throw UsageError("lemma3_check: requires k <= m");
    require_grid(n_grid, "lemma3_check");
    require(n_grid.front() >= m, "lemma3_check: requires m <= n");

    const std::int64_t n_max = n_grid.back();
    const auto d = weight_table(scheme, n_max);
    const XiMeanTable means(model, f, n_max, k, options);

    const std::size_t columns = n_grid.size();
    const auto reps = static_cast<std::size_t>(options.reps);
    std::vector<double> values(reps * columns);
    const auto blocks = split_blocks(reps, 256);
    parallel_for(blocks.size(), options.threads, [&](std::size_t b) {
        std::vector<double> path(static_cast<std::size_t>(n_max));
        for (std::size_t r = blocks[b].begin; r < blocks[b].end; ++r) {
            PathStream stream(model, derive_seed(options.seed, streams::kLemma3, r));
            for (auto& s : path) s = stream.next();
            const double s_k = k > 0 ? path[static_cast<std::size_t>(k - 1)] : 0.0;
            CompensatedSum acc;
            std::size_t column = 0;
            for (std::int64_t l = m; l <= n_max; ++l) {
                const double s_l = path[static_cast<std::size_t>(l - 1)];
                const double xi = f(model.normalize(s_l, l)) - means.level(l);
                const double xi_lag = f((s_l - s_k) / model.normalization.scale(l)) - means.lagged(l);
                acc += d[static_cast<std::size_t>(l - 1)] * (xi - xi_lag);
                if (l == n_grid[column]) {
                    values[r * columns + column] = abs_pow(acc.value(), p);
                    ++column;
                }
            }
        }
    });

    BoundReport report;
    report.lemma = Lemma::L3;
    report.grid_fields = {"k", "m", "n"};
    const auto estimates = column_estimates(values, columns);
    CompensatedSum squares;
    std::int64_t l = m - 1;
    for (std::size_t c = 0; c < columns; ++c) {
        while (l < n_grid[c]) {
            ++l;
            const double w = d[static_cast<std::size_t>(l - 1)];
            squares += w * w * static_cast<double>(l);
        }
        report.grid.push_back({k, m, n_grid[c]});
        report.lhs.push_back(estimates[c].mean);
        report.se.push_back(estimates[c].se);
        report.rhs_structural.push_back(std::pow(squares.value(), 0.5 * p));
    }
    report.scalars.emplace_back("p", p);
    report.scalars.emplace_back("beta", beta);
    report.scalars.emplace_back("kappa", 2.0 * beta);
    report.scalars.emplace_back("tau_kappa", lemma3_prefactor_shape(beta));
    report.scalars.emplace_back("prefactor_shape", std::pow(lemma3_prefactor_shape(beta), 0.5 * p));
    report.scalars.emplace_back("exact_means", means.exact() ? 1.0 : 0.0);
    report.finalize();
    return report;
}

BoundReport lemma4_check(const SequenceModel& model, const WeightScheme& scheme, const LipschitzFunction& f,
                         std::span<const std::int64_t> n_grid, int p, double beta, int mu,
                         const MonteCarloOptions& options) {
    require_lemma_model(model, "lemma4_check");
    require_replicas(options, "lemma4_check");
    require(p >= 2, "lemma4_check: p must be >= 2");
    if (p > mu) throw UsageError("lemma4_check: requires p <= mu");
    require(beta > 0.0, "lemma4_check: beta must be > 0");
    require_grid(n_grid, "lemma4_check");
    require(n_grid.front() >= 1, "lemma4_check: N must be >= 1");

    const std::int64_t n_max = n_grid.back();
    const auto d = weight_table(scheme, n_max);
    const XiMeanTable means(model, f, n_max, -1, options);

    const std::size_t columns = n_grid.size();
    const auto reps = static_cast<std::size_t>(options.reps);
    std::vector<double> values(reps * columns);
    const auto blocks = split_blocks(reps, 256);
    parallel_for(blocks.size(), options.threads, [&](std::size_t b) {
        for (std::size_t r = blocks[b].begin; r < blocks[b].end; ++r) {
            PathStream stream(model, derive_seed(options.seed, streams::kLemma4, r));
            CompensatedSum acc;
            std::size_t column = 0;
            for (std::int64_t l = 1; l <= n_max; ++l) {
                const double xi = f(model.normalize(stream.next(), l)) - means.level(l);
                acc += d[static_cast<std::size_t>(l - 1)] * xi;
                if (l == n_grid[column]) {
                    values[r * columns + column] = abs_pow(acc.value(), p);
                    ++column;
                }
            }
        }
    });

    BoundReport report;
    report.lemma = Lemma::L4;
    report.grid_fields = {"N"};
    const auto estimates = column_estimates(values, columns);
    const auto double_sums = weighted_double_sums(scheme, beta, n_grid, SumMode::Fast);
    std::vector<double> v_column;
    for (std::size_t c = 0; c < columns; ++c) {
        report.grid.push_back({n_grid[c]});
        report.lhs.push_back(estimates[c].mean);
        report.se.push_back(estimates[c].se);
        report.rhs_structural.push_back(std::pow(double_sums[c], 0.5 * p));
        v_column.push_back(v_quantity(scheme, beta, 1, n_grid[c]));
    }
    report.extra_columns.emplace_back("v_1N", std::move(v_column));
    report.scalars.emplace_back("p", p);
    report.scalars.emplace_back("beta", beta);
    report.scalars.emplace_back("mu", mu);
    report.scalars.emplace_back("exact_means", means.exact() ? 1.0 : 0.0);
    report.finalize();
    return report;
}

}  // namespace asclt
