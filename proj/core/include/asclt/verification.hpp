#pragma once

#include "asclt/functions.hpp"
#include "asclt/models.hpp"
#include "asclt/stats.hpp"
#include "asclt/weights.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace asclt {

enum class Lemma { L2, L3, L4 };

std::string_view to_string(Lemma lemma);

/// Where the centring means E f(S_l/a_l) and E f((S_l - S_k)/a_l) come from.
/// Auto uses exact values when they are known (constant f; odd f under a
/// symmetric law) and a Monte Carlo table otherwise.
enum class MeanSource { Auto, MonteCarlo };

struct MonteCarloOptions {
    std::int64_t reps = 10'000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::int64_t mean_reps = 100'000;
    std::uint64_t mean_seed = 0x5eed;
    MeanSource mean_source = MeanSource::Auto;
};

/// Frozen table of centring means for the xi variables
///   xi_l     = f(S_l/a_l)         - E f(S_l/a_l)
///   xi_{k,l} = f((S_l - S_k)/a_l) - E f((S_l - S_k)/a_l).
///
/// The Monte Carlo table is built from its own seed substream, disjoint from
/// the replicas used for the outer moments. For iid increments S_l - S_k has
/// the law of S_{l-k}, which is what the table samples.
class XiMeanTable {
public:
    /// Means for l = 1..n_max. `lag` is k in xi_{k,l}; a negative lag skips
    /// the lagged table.
    XiMeanTable(const SequenceModel& model, const LipschitzFunction& f, std::int64_t n_max, std::int64_t lag,
                const MonteCarloOptions& options);

    /// E f(S_l/a_l)
    double level(std::int64_t l) const { return level_[static_cast<std::size_t>(l - 1)].mean; }
    Estimate level_estimate(std::int64_t l) const { return level_[static_cast<std::size_t>(l - 1)]; }

    /// E f((S_l - S_lag)/a_l)
    double lagged(std::int64_t l) const { return lagged_[static_cast<std::size_t>(l - 1)].mean; }

    bool exact() const { return exact_; }
    std::int64_t size() const { return static_cast<std::int64_t>(level_.size()); }

private:
    std::vector<Estimate> level_;
    std::vector<Estimate> lagged_;
    bool exact_ = false;
};

/// Empirical side of a lemma inequality against its structural right-hand
/// side (the N-dependent factor with the unknown constants dropped).
///
/// Verdict: let the ceiling be the largest (|lhs| + 2 se) / rhs over the
/// first half of the grid. The report fails only if some row in the second
/// half has (|lhs| - 2 se) / rhs above the ceiling, i.e. a new maximum that
/// is significant at two standard errors.
struct BoundReport {
    Lemma lemma = Lemma::L2;
    std::vector<std::string> grid_fields;          // names of the tuple entries
    std::vector<std::vector<std::int64_t>> grid;   // one tuple per row
    std::vector<double> lhs;
    std::vector<double> se;
    std::vector<double> rhs_structural;
    std::vector<double> ratio;
    std::vector<std::pair<std::string, std::vector<double>>> extra_columns;
    std::vector<std::pair<std::string, double>> scalars;
    double ceiling = 0.0;
    bool pass = false;

    void finalize();
};

/// Cov(f(S_k/a_k), f(S_l/a_l)) against (k/l)^beta, from paired paths. Rows
/// are ordered by l/k.
BoundReport lemma2_check(const SequenceModel& model, const LipschitzFunction& f,
                         std::span<const std::pair<std::int64_t, std::int64_t>> pairs, double beta,
                         const MonteCarloOptions& options);

/// E|sum_{l=m}^n d_l (xi_l - xi_{k,l})|^p against (sum_{l=m}^n d_l^2 l)^{p/2}
/// for each n in n_grid. k = 0 means S_0 = 0.
BoundReport lemma3_check(const SequenceModel& model, const WeightScheme& scheme, const LipschitzFunction& f,
                         std::int64_t k, std::int64_t m, std::span<const std::int64_t> n_grid, int p, double beta,
                         const MonteCarloOptions& options);

/// E|sum_{k<=N} d_k xi_k|^p against (sum_{k<=l<=N} d_k d_l (k/l)^beta)^{p/2}.
/// Also reports V_{1,N}. Requires 2 <= p <= mu.
BoundReport lemma4_check(const SequenceModel& model, const WeightScheme& scheme, const LipschitzFunction& f,
                         std::span<const std::int64_t> n_grid, int p, double beta, int mu,
                         const MonteCarloOptions& options);

/// tau(kappa) = max(2^kappa / kappa, 1 + 1/kappa) with kappa = 2 beta; the
/// beta-dependent part of the difference-moment prefactor.
double lemma3_prefactor_shape(double beta);

}  // namespace asclt
