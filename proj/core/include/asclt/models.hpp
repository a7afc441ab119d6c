#pragma once

#include "asclt/compensated.hpp"
#include "asclt/report.hpp"
#include "asclt/rng.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace asclt {

/// Zero-mean, unit-variance increment laws.
enum class IncrementLaw { StandardNormal, Rademacher, UniformCentered, ExponentialCentered };

std::string_view to_string(IncrementLaw law);

/// How the centring constant enters: S_k/a_k - b_k (the theorem's form) or
/// (S_k - b_k)/a_k.
enum class CenteringForm { Theorem, Shifted };

/// The weak limit H of the normalized partial sums. Only the standard normal
/// is implemented.
class LimitLaw {
public:
    static LimitLaw standard_normal() { return {}; }

    std::string_view name() const { return "StandardNormal"; }
    double cdf(double x) const;
    double pdf(double x) const;
    bool symmetric() const { return true; }

    /// Checks monotonicity and the 0/1 limits of the CDF on [lo, hi].
    bool cdf_well_formed(double lo = -40.0, double hi = 40.0, double step = 1e-2) const;
};

/// a_n = n^exponent and b_n = centering (a constant sequence).
struct Normalization {
    double exponent = 0.5;
    double centering = 0.0;

    double scale(std::int64_t n) const;
};

struct SequenceModel {
    IncrementLaw law = IncrementLaw::StandardNormal;
    Normalization normalization{};
    CenteringForm form = CenteringForm::Theorem;
    LimitLaw limit = LimitLaw::standard_normal();

    /// "normal", "rademacher", "uniform", "exponential", optionally followed
    /// by ":a=<exponent>,b=<centering>,form=<theorem|shifted>".
    static SequenceModel parse(std::string_view spec);
    std::string describe() const;

    double draw(Rng& rng) const;

    /// T_n built from a partial sum S_n.
    double normalize(double partial_sum, std::int64_t n) const;

    /// Increment law symmetric about 0.
    bool symmetric() const { return law != IncrementLaw::ExponentialCentered; }
    bool centered() const { return normalization.centering == 0.0; }
};

/// Streaming partial sums S_1, S_2, ... of one path, with compensated
/// accumulation. simulate_path and every Monte Carlo routine draw through
/// this type, so a seed always yields the same path.
class PathStream {
public:
    PathStream(const SequenceModel& model, std::uint64_t seed);

    /// Advances to the next index and returns S_k.
    double next();
    std::int64_t index() const { return k_; }
    double partial_sum() const { return sum_.value(); }

private:
    const SequenceModel* model_;
    Rng rng_;
    CompensatedSum sum_;
    std::int64_t k_ = 0;
};

struct PathSample {
    std::int64_t n = 0;
    std::vector<double> partial_sums;  // S_1..S_N
    std::vector<double> normalized;    // T_1..T_N
    std::uint64_t seed = 0;
    std::string model_id;
};

PathSample simulate_path(const SequenceModel& model, std::int64_t n, std::uint64_t seed);

/// Condition (C4), first part: sup over pairs of (a_k/a_l) / (C (k/l)^beta).
/// Passes when the statistic is <= 1.
ConditionReport check_c4_growth(const SequenceModel& model, double c, double beta,
                                std::span<const std::pair<std::int64_t, std::int64_t>> pairs);

/// Monte Carlo estimate of E|T_n|^mu at each n of the grid. The trace holds
/// (n, estimate) with standard errors in trace_se. Passes unless the last
/// estimate exceeds the first by more than 3 combined standard errors.
ConditionReport estimate_mu_moment(const SequenceModel& model, std::span<const std::int64_t> n_grid, int mu,
                                   std::int64_t reps, std::uint64_t seed, unsigned threads = 1);

inline constexpr std::int64_t kMinReplicas = 1000;

/// |x|^p for a non-negative integer p by repeated multiplication.
inline double abs_pow(double x, int p) {
    const double a = x < 0 ? -x : x;
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= a;
    return r;
}

}  // namespace asclt
