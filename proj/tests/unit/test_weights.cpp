#include <doctest.h>

#include "asclt/error.hpp"
#include "asclt/weights.hpp"
#include "oracles/oracles.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace asclt;

namespace {

oracle::Weight as_oracle(const WeightScheme& s) {
    return [s](std::int64_t k) { return s.at(k); };
}

}  // namespace

TEST_CASE("weight_at examples") {
    CHECK(weight_at(WeightScheme::harmonic(), 5) == 0.2);
    CHECK(weight_at(WeightScheme::power(1.0), 7) == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
    CHECK(weight_at(WeightScheme::power_log(1.0), 8) == doctest::Approx(0.25993019270997949).epsilon(1e-14));
    CHECK(weight_at(WeightScheme::power(0.5), 4) == doctest::Approx(0.5));
    CHECK(weight_at(WeightScheme::custom({2, 3, 5}), 3) == 5.0);
}

TEST_CASE("weight_at errors") {
    CHECK_THROWS_AS(weight_at(WeightScheme::harmonic(), 0), UsageError);
    CHECK_THROWS_AS(weight_at(WeightScheme::harmonic(), -3), UsageError);
    CHECK_THROWS_AS(weight_at(WeightScheme::custom({1, 2}), 3), OutOfRangeError);
    CHECK_THROWS_AS(WeightScheme::custom({1, 0}), UsageError);
    CHECK_THROWS_AS(WeightScheme::power(1.5), UsageError);
    CHECK_THROWS_AS(WeightScheme::power(0.0), UsageError);
    CHECK_THROWS_AS(WeightScheme::power_log(-1.0), UsageError);
}

TEST_CASE("power-log guard keeps d_1 positive") {
    const auto s = WeightScheme::power_log(1.0);
    CHECK(s.at(1) > 0.0);
    CHECK(s.at(1) == s.at(2));
    // gamma = 0 is plain harmonic, no guard needed
    CHECK(WeightScheme::power_log(0.0).at(1) == 1.0);
}

TEST_CASE("parse weight specs") {
    CHECK(WeightScheme::parse("harmonic").family() == WeightFamily::Harmonic);
    const auto pl = WeightScheme::parse("powerlog:2");
    CHECK(pl.family() == WeightFamily::PowerLog);
    CHECK(pl.parameter() == 2.0);
    CHECK(WeightScheme::parse("power:0.5").family() == WeightFamily::Power);
    CHECK_THROWS_AS(WeightScheme::parse("geometric"), UsageError);
    CHECK_THROWS_AS(WeightScheme::parse("power:abc"), UsageError);
}

TEST_CASE("custom tables load from one-value-per-line files") {
    const auto path = std::filesystem::temp_directory_path() / "asclt_weights_test.txt";
    {
        std::ofstream out(path);
        out << "2\n3\n5\n";
    }
    const auto s = WeightScheme::load_custom(path);
    CHECK(s.max_index() == 3);
    CHECK(prefix_sums(s, 3).values() == std::vector<double>{2, 5, 10});
    const auto parsed = WeightScheme::parse("custom:" + path.string());
    CHECK(parsed.at(2) == 3.0);
    {
        std::ofstream out(path);
        out << "1\n-2\n";
    }
    CHECK_THROWS_AS(WeightScheme::load_custom(path), UsageError);
    std::filesystem::remove(path);
    CHECK_THROWS(WeightScheme::load_custom(path));
}

TEST_CASE("prefix sums") {
    CHECK(prefix_sums(WeightScheme::harmonic(), 1).at(1) == 1.0);
    CHECK(weight_total(WeightScheme::harmonic(), 1000) == doctest::Approx(7.48547086055034491).epsilon(1e-14));
    CHECK(prefix_sums(WeightScheme::custom({2, 3, 5}), 3).values() == std::vector<double>{2, 5, 10});
    CHECK_THROWS_AS(prefix_sums(WeightScheme::harmonic(), 0), UsageError);
    CHECK_THROWS_AS(prefix_sums(WeightScheme::custom({1, 1}), 3), OutOfRangeError);
}

TEST_CASE("prefix sums match naive long-double summation and difference back to d_k") {
    for (const auto& s : {WeightScheme::harmonic(), WeightScheme::power_log(1.0), WeightScheme::power(0.5)}) {
        const std::int64_t n = 100'000;
        const auto cache = prefix_sums(s, n);
        CHECK(oracle::relative_error(cache.at(n), oracle::naive_total(as_oracle(s), n)) < 1e-12);
        for (std::int64_t k = 2; k <= n; ++k) {
            REQUIRE(cache.at(k) > cache.at(k - 1));
            REQUIRE(std::abs(cache.increment(k) - s.at(k)) <= 1e-12 * s.at(k));
        }
    }
}

TEST_CASE("check_c2") {
    SUBCASE("harmonic: k d_k = 1 exactly, never violated") {
        for (double alpha : {0.1, 0.5, 0.9}) {
            const auto r = check_c2(WeightScheme::harmonic(), alpha, 1, 10'000);
            CHECK(r.sup_statistic == 1.0);
            CHECK(r.violation_indices.empty());
            CHECK(r.pass);
        }
    }
    SUBCASE("power 0.5 grows without bound") {
        const auto r = check_c2(WeightScheme::power(0.5), 0.3, 1, 10'000);
        CHECK_FALSE(r.violation_indices.empty());
        CHECK(r.sup_statistic == doctest::Approx(100.0));
        CHECK_FALSE(r.pass);
    }
    SUBCASE("constant weights") {
        const auto r = check_c2(WeightScheme::custom(std::vector<double>(100, 1.0)), 0.5, 1, 100);
        CHECK(r.sup_statistic == doctest::Approx(100.0));
        CHECK_FALSE(r.pass);
    }
    SUBCASE("finite threshold") {
        CHECK(check_c2(WeightScheme::harmonic(), 0.5, 1, 100, 1.0).pass);
        CHECK_FALSE(check_c2(WeightScheme::harmonic(), 0.5, 1, 100, 0.5).pass);
    }
    CHECK_THROWS_AS(check_c2(WeightScheme::harmonic(), 0.0, 1, 100), UsageError);
    CHECK_THROWS_AS(check_c2(WeightScheme::harmonic(), 1.0, 1, 100), UsageError);
    CHECK_THROWS_AS(check_c2(WeightScheme::harmonic(), 0.5, 100, 100), UsageError);
}

TEST_CASE("check_c3") {
    CHECK(check_c3(WeightScheme::harmonic(), 1.0, 1'000'000).pass);
    const auto flat = check_c3(WeightScheme::custom(std::vector<double>(1000, 1.0)), 1.0, 1000);
    CHECK_FALSE(flat.pass);
    CHECK(flat.sup_statistic == doctest::Approx(std::log(1000.0)));
    // H_8 < e: nothing to evaluate
    CHECK_THROWS_AS(check_c3(WeightScheme::harmonic(), 1.0, 8), UsageError);
    CHECK_THROWS_AS(check_c3(WeightScheme::harmonic(), 0.0, 1000), UsageError);
}

TEST_CASE("lemma1_trace") {
    const auto grid = decade_grid(100, 1'000'000);
    for (double eps : {0.1, 0.5, 1.0, 2.0}) {
        // eps = 0.1 only turns over at large N; use a later grid for it
        const auto g = eps < 0.5 ? decade_grid(100'000, 100'000'000) : grid;
        INFO("eps=" << eps);
        CHECK(lemma1_trace(WeightScheme::harmonic(), eps, g).pass);
    }
    CHECK_FALSE(lemma1_trace(WeightScheme::custom(std::vector<double>(1'000'000, 1.0)), 0.5, grid).pass);
    CHECK_THROWS_AS(lemma1_trace(WeightScheme::harmonic(), 0.5, std::vector<std::int64_t>{}), UsageError);
    CHECK_THROWS_AS(lemma1_trace(WeightScheme::harmonic(), 0.0, grid), UsageError);
}

TEST_CASE("power_sum") {
    const auto h = WeightScheme::harmonic();
    CHECK(power_sum(h, 0.5, 1) == 1.0);
    CHECK(power_sum(h, 1.0, 4) == 4.0);
    long double direct = 0.0L;
    for (int k = 1; k <= 100; ++k) direct += std::pow(static_cast<long double>(k), -0.5L);
    CHECK(oracle::relative_error(power_sum(h, 0.5, 100), direct) < 1e-12);

    PowerSumCache cache(h, 0.5);
    CHECK(cache.at(100) == power_sum(h, 0.5, 100));
    CHECK(cache.at(10) == power_sum(h, 0.5, 10));
}

TEST_CASE("v_quantity") {
    for (const auto& s : {WeightScheme::harmonic(), WeightScheme::power_log(1.0), WeightScheme::custom({3, 1, 4, 1, 5})}) {
        CHECK(v_quantity(s, 0.7, 1, 1) == doctest::Approx(s.at(1) * s.at(1)).epsilon(1e-15));
    }
    CHECK(v_quantity(WeightScheme::custom({1, 1}), 1.0, 1, 2) == doctest::Approx(2.5).epsilon(1e-15));
    const auto h = WeightScheme::harmonic();
    CHECK(oracle::relative_error(v_quantity(h, 0.5, 1, 500), oracle::v_double_loop(as_oracle(h), 0.5, 1, 500)) < 1e-12);
    CHECK(oracle::relative_error(v_quantity(h, 0.5, 37, 500), oracle::v_double_loop(as_oracle(h), 0.5, 37, 500)) < 1e-12);
    CHECK_THROWS_AS(v_quantity(h, 0.5, 5, 4), UsageError);
    CHECK_THROWS_AS(v_quantity(h, 0.5, 0, 4), UsageError);
}

TEST_CASE("v_quantity is additive over split points") {
    const auto s = WeightScheme::power_log(1.0);
    for (std::int64_t w : {1, 7, 100, 999}) {
        const double whole = v_quantity(s, 0.3, 1, 1000);
        const double split = v_quantity(s, 0.3, 1, w) + v_quantity(s, 0.3, w + 1, 1000);
        CHECK(std::abs(whole - split) <= 1e-12 * whole);
    }
}

TEST_CASE("factorized double sum agrees with brute force") {
    for (const auto& s : {WeightScheme::harmonic(), WeightScheme::power_log(1.0), WeightScheme::power(0.7)}) {
        for (double alpha : {0.3, 0.5, 0.9}) {
            const double fast = weighted_double_sum(s, alpha, 2000, SumMode::Fast);
            const double brute = weighted_double_sum(s, alpha, 2000, SumMode::BruteForce);
            CHECK(std::abs(fast - brute) <= kFactorizationTolerance * brute);
        }
    }
    const auto h = WeightScheme::harmonic();
    CHECK(oracle::relative_error(weighted_double_sum(h, 0.5, 300, SumMode::Fast),
                                 oracle::double_sum(as_oracle(h), 0.5, 300)) < 1e-12);
    // single term
    const auto c = WeightScheme::custom({3.0});
    CHECK(weighted_double_sum(c, 0.5, 1, SumMode::Fast) == 9.0);
    // lemma 4's V_{1,N} is the same quantity with beta = alpha
    CHECK(weighted_double_sum(h, 0.5, 777, SumMode::Fast) == doctest::Approx(v_quantity(h, 0.5, 1, 777)).epsilon(1e-13));
}

TEST_CASE("lemma5_ratio") {
    const auto h = WeightScheme::harmonic();
    const auto fast = lemma5_ratio(h, 0.5, 0.9, 2000, SumMode::Fast);
    const auto brute = lemma5_ratio(h, 0.5, 0.9, 2000, SumMode::BruteForce);
    REQUIRE(fast.trace.size() == brute.trace.size());
    for (std::size_t i = 0; i < fast.trace.size(); ++i) {
        CHECK(fast.trace[i].first == brute.trace[i].first);
        CHECK(std::abs(fast.trace[i].second - brute.trace[i].second) <= 1e-10 * brute.trace[i].second);
    }
    CHECK_NOTHROW(lemma5_ratio(h, 0.5, 0.9, 2000, SumMode::Checked));

    const auto grid = decade_grid(10, 1'000'000);
    const auto big = lemma5_ratio(h, 0.5, 0.9, grid, SumMode::Fast);
    CHECK(big.pass);
    for (std::size_t i = 1; i < big.trace.size(); ++i) CHECK(big.trace[i].second < big.trace[i - 1].second);

    CHECK_THROWS_AS(lemma5_ratio(h, 0.0, 0.9, 2000, SumMode::Fast), UsageError);
    CHECK_THROWS_AS(lemma5_ratio(h, 0.5, 1.5, 2000, SumMode::Fast, 1.0), UsageError);
}

TEST_CASE("grids") {
    CHECK(decade_grid(100, 100'000) == std::vector<std::int64_t>{100, 1000, 10'000, 100'000});
    CHECK(decade_grid(100, 5000) == std::vector<std::int64_t>{100, 1000, 5000});
    CHECK(power_of_two_grid(6, 8) == std::vector<std::int64_t>{64, 128, 256});
}
