#include <doctest.h>

#include "asclt/averaging.hpp"
#include "asclt/error.hpp"
#include "asclt/functions.hpp"
#include "asclt/models.hpp"
#include "oracles/oracles.hpp"

#include <cmath>
#include <vector>

using namespace asclt;

namespace {

double average_on_path(const WeightScheme& s, const LipschitzFunction& f, const PathSample& path) {
    LogAverageAccumulator acc;
    for (std::int64_t k = 1; k <= path.n; ++k) acc.add(s.at(k), f(path.normalized[static_cast<std::size_t>(k - 1)]));
    return acc.average();
}

}  // namespace

TEST_CASE("accumulator examples") {
    LogAverageAccumulator one;
    one.add(1.0, 0.3);
    CHECK(one.average() == 0.3);
    CHECK(one.next_k() == 2);

    LogAverageAccumulator three;
    for (double v : {0.0, 3.0, 6.0}) three = accumulate(three, 1.0, v);
    CHECK(three.average() == 3.0);
    CHECK(three.total_weight() == 3.0);

    LogAverageAccumulator empty;
    CHECK(empty.empty());
    CHECK_THROWS_AS((void)empty.average(), UsageError);
    CHECK_THROWS_AS(empty.add(0.0, 1.0), UsageError);
    CHECK_THROWS_AS(empty.add(-1.0, 1.0), UsageError);
}

TEST_CASE("constant f is reproduced exactly for every scheme") {
    for (const auto& s : {WeightScheme::harmonic(), WeightScheme::power_log(2.0), WeightScheme::power(0.3)}) {
        LogAverageAccumulator acc;
        for (std::int64_t k = 1; k <= 100'000; ++k) {
            acc.add(s.at(k), 0.1);
            if (k % 9973 == 0) REQUIRE(acc.average() == 0.1);
        }
        CHECK(acc.average() == 0.1);
    }
}

TEST_CASE("replaying a path gives a bit-identical accumulator") {
    const auto path = simulate_path(SequenceModel::parse("normal"), 5000, 3);
    const auto s = WeightScheme::harmonic();
    const auto f = LipschitzFunction::arctan();
    LogAverageAccumulator a;
    LogAverageAccumulator b;
    for (std::int64_t k = 1; k <= 5000; ++k) {
        const double v = f(path.normalized[static_cast<std::size_t>(k - 1)]);
        a.add(s.at(k), v);
        b.add(s.at(k), v);
    }
    CHECK(a == b);
}

TEST_CASE("streaming equals batch recomputation") {
    const auto path = simulate_path(SequenceModel::parse("exponential"), 50'000, 8);
    const auto s = WeightScheme::power_log(1.0);
    const auto f = LipschitzFunction::soft_indicator(0.2, 0.5);
    std::vector<double> fv;
    for (double t : path.normalized) fv.push_back(f(t));
    const oracle::Weight d = [&](std::int64_t k) { return s.at(k); };
    LogAverageAccumulator acc;
    for (std::int64_t k = 1; k <= path.n; ++k) {
        acc.add(s.at(k), fv[static_cast<std::size_t>(k - 1)]);
        if (k == 1 || k == 10 || k == 1000 || k == 50'000) {
            CHECK(oracle::relative_error(acc.average(), oracle::batch_average(d, fv, k)) < 1e-12);
        }
    }
}

TEST_CASE("linearity and monotone response on a fixed path") {
    const auto path = simulate_path(SequenceModel::parse("normal"), 20'000, 11);
    const auto s = WeightScheme::harmonic();
    const auto atan = LipschitzFunction::arctan();
    const auto soft = LipschitzFunction::soft_indicator(0.0, 0.1);
    const double a_atan = average_on_path(s, atan, path);
    const double a_soft = average_on_path(s, soft, path);

    LogAverageAccumulator combo;
    for (std::int64_t k = 1; k <= path.n; ++k) {
        const double t = path.normalized[static_cast<std::size_t>(k - 1)];
        combo.add(s.at(k), 2.0 * atan(t) - 3.0 * soft(t));
    }
    const double expect = 2.0 * a_atan - 3.0 * a_soft;
    CHECK(std::abs(combo.average() - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));

    // clamp(-1,1) <= clamp(-1,2) pointwise
    CHECK(average_on_path(s, LipschitzFunction::clamped_linear(-1.0, 1.0), path) <=
          average_on_path(s, LipschitzFunction::clamped_linear(-1.0, 2.0), path));
    // soft indicators are nondecreasing in x0
    CHECK(average_on_path(s, LipschitzFunction::soft_indicator(-0.5, 0.1), path) <= a_soft);
}

TEST_CASE("run_experiment") {
    const auto normal = SequenceModel::parse("normal");
    const auto h = WeightScheme::harmonic();
    const std::vector<std::int64_t> cps = {10, 100, 1000};
    const std::vector<std::uint64_t> seeds = {1, 2, 3, 4};

    const auto one = run_experiment(normal, h, LipschitzFunction::constant(1.0), 1000, cps, seeds);
    for (const auto& row : one.per_seed) {
        CHECK(row.size() == cps.size());
        for (double v : row) CHECK(v == 1.0);
    }
    CHECK(one.target == 1.0);

    const auto f = LipschitzFunction::arctan();
    const auto a = run_experiment(normal, h, f, 1000, cps, seeds, 1);
    const auto b = run_experiment(normal, h, f, 1000, cps, seeds, 3);
    CHECK(a.per_seed == b.per_seed);
    CHECK(a.median_abs_error == b.median_abs_error);

    // per-seed values agree with a direct pass over the simulated path
    const auto path = simulate_path(normal, 1000, 2);
    CHECK(a.per_seed[1].back() == doctest::Approx(average_on_path(h, f, path)).epsilon(1e-14));

    const std::vector<std::int64_t> too_far = {10, 2000};
    CHECK_THROWS_AS(run_experiment(normal, h, f, 1000, too_far, seeds), UsageError);
    const std::vector<std::int64_t> unsorted = {100, 10};
    CHECK_THROWS_AS(run_experiment(normal, h, f, 1000, unsorted, seeds), UsageError);
    CHECK_THROWS_AS(run_experiment(normal, h, f, 1000, cps, std::vector<std::uint64_t>{}), UsageError);
}

TEST_CASE("median_error_decreasing") {
    ConvergenceTrace t;
    t.median_abs_error = {0.5, 0.4, 0.3, 0.35};
    CHECK(median_error_decreasing(t, 3) == false);
    t.median_abs_error = {0.5, 0.6, 0.3, 0.2};
    CHECK(median_error_decreasing(t, 3) == true);
    CHECK(median_error_decreasing(t, 4) == false);
}

TEST_CASE("subsequence checkpoints") {
    const auto h = subsequence_checkpoints(WeightScheme::harmonic(), 8, 1'000'000);
    CHECK(h == std::vector<std::int64_t>{9, 34, 160, 909, 6498, 60187, 741785});
    CHECK(subsequence_checkpoints(WeightScheme::custom({5, 1, 1}), 1, 3) == std::vector<std::int64_t>{1});
    // repeated N for close j values are merged
    const auto c = subsequence_checkpoints(WeightScheme::custom({20, 1, 1}), 3, 3);
    CHECK(c == std::vector<std::int64_t>{1});
    const auto d = default_checkpoints(WeightScheme::harmonic(), 1'000'000);
    for (std::size_t i = 1; i < d.size(); ++i) CHECK(d[i] > d[i - 1]);
    CHECK(d.back() == 1'000'000);
}

TEST_CASE("ratio_consecutive") {
    const std::vector<std::int64_t> g = {1'000'000};
    const auto r = ratio_consecutive(WeightScheme::harmonic(), g);
    CHECK(r.trace[0].second == doctest::Approx(1.0000000694794683).epsilon(1e-15));
    CHECK(r.pass);
    const std::vector<std::int64_t> first = {1};
    CHECK(ratio_consecutive(WeightScheme::custom({1, 1}), first).trace[0].second == 2.0);
    CHECK_FALSE(ratio_consecutive(WeightScheme::custom({1, 1}), first).pass);
    const std::vector<std::int64_t> repeated = {50, 50};
    const auto rep = ratio_consecutive(WeightScheme::harmonic(), repeated);
    CHECK(rep.trace[0].second == rep.trace[1].second);
}

TEST_CASE("median") {
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
    CHECK_THROWS_AS(median({}), UsageError);
}
