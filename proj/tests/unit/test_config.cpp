#include <doctest.h>

#include "asclt/config.hpp"
#include "asclt/error.hpp"
#include "asclt/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

using namespace asclt;

namespace {

bool mentions(const std::vector<std::string>& violations, const std::string& needle) {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

ExperimentConfig small(Operation op) {
    ExperimentConfig c;
    c.operation = op;
    c.n_max = 2000;
    c.seed_count = 4;
    c.reps = 1000;
    c.mean_reps = 2000;
    c.grid = {16, 32};
    return c;
}

}  // namespace

TEST_CASE("default config is valid") {
    CHECK(validate_config(ExperimentConfig{}).empty());
    CHECK(ExperimentConfig{}.effective_mu() == 8);
    CHECK(ExperimentConfig{}.effective_seeds().size() == 20);
    CHECK(ExperimentConfig{}.effective_seeds().front() == 1);
}

TEST_CASE("moment order against rho and r") {
    ExperimentConfig c;
    c.rho = 1.0;
    c.r = 0.5;
    c.mu = 8;
    CHECK(validate_config(c).empty());
    c.mu = 7;
    const auto v = validate_config(c);
    REQUIRE(v.size() == 1);
    CHECK(mentions(v, "μ ≥ max(2, 4/(ρ−r))"));
    CHECK(minimal_mu(1.0, 0.5) == 8);
    CHECK(minimal_mu(10.0, 1.0) == 2);
    CHECK(minimal_mu(1.0, 0.2) == 5);
}

TEST_CASE("parameter violations name the inequality") {
    ExperimentConfig c;
    c.alpha = 1.5;
    CHECK(mentions(validate_config(c), "α ∈ (0,1)"));
    ExperimentConfig d;
    d.p = d.effective_mu() + 1;
    CHECK(mentions(validate_config(d), "p ≤ μ"));
    ExperimentConfig e;
    e.eta = 1.0;
    CHECK(mentions(validate_config(e), "η < ρ"));
    ExperimentConfig f;
    f.reps = 10;
    CHECK(mentions(validate_config(f), "reps ≥ 1000"));
    ExperimentConfig g;
    g.lag = 3;
    g.start = 2;
    CHECK(mentions(validate_config(g), "k ≤ m"));
    ExperimentConfig h;
    h.checkpoints = {10, 5};
    CHECK_FALSE(validate_config(h).empty());
}

TEST_CASE("operation names") {
    for (const char* name : {"check-weights", "check-model", "simulate", "verify:lemma2", "verify:lemma3",
                             "verify:lemma4", "verify:lemma5", "sweep", "integral"}) {
        CHECK(to_string(parse_operation(name)) == name);
    }
    CHECK_THROWS_AS(parse_operation("verify:lemma9"), UsageError);
}

TEST_CASE("JSON round trip") {
    ExperimentConfig c;
    c.operation = Operation::VerifyLemma3;
    c.function = "soft-indicator:0,0.1";
    c.weights = "powerlog:1";
    c.seeds = {3, 5, 8};
    c.r = 0.25;
    c.mu = 6;
    c.grid = {64, 128};
    c.pairs = {{1, 2}, {3, 9}};
    c.format = OutputFormat::Json;
    const auto j = to_json(c);
    const auto back = config_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(back.seeds == c.seeds);
    CHECK(back.effective_r() == 0.25);
    CHECK(back.pairs == c.pairs);

    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"nonsense", 1}}), UsageError);
    CHECK_THROWS(config_from_json(nlohmann::json{{"alpha", "half"}}));
}

TEST_CASE("list parsers") {
    CHECK(parse_seed_list("1,2,5") == std::vector<std::uint64_t>{1, 2, 5});
    CHECK(parse_seed_list("3..6") == std::vector<std::uint64_t>{3, 4, 5, 6});
    CHECK(parse_index_list("10, 100,1000") == std::vector<std::int64_t>{10, 100, 1000});
    CHECK(parse_pair_list("4:16,16:64") == std::vector<std::pair<std::int64_t, std::int64_t>>{{4, 16}, {16, 64}});
    CHECK_THROWS_AS(parse_pair_list("4-16"), UsageError);
    CHECK_THROWS_AS(parse_seed_list("a,b"), UsageError);
}

TEST_CASE("run_config exit codes") {
    std::ostringstream out;
    std::ostringstream log;
    auto bad = small(Operation::Sweep);
    bad.alpha = 1.5;
    CHECK(run_config(bad, out, log) == kExitUsage);
    CHECK(log.str().find("α ∈ (0,1)") != std::string::npos);

    auto unknown = small(Operation::Sweep);
    unknown.function = "sin";
    CHECK(run_config(unknown, out, log) == kExitUsage);

    auto ok = small(Operation::VerifyLemma5);
    ok.grid = {};
    ok.n_max = 1'000'000;
    CHECK(run_config(ok, out, log) == kExitPass);

    // constant weights fail condition checks: verdict failure, not a usage error
    const std::string path = "asclt_flat_weights.txt";
    {
        std::ofstream file(path);
        for (int i = 0; i < 5000; ++i) file << "1\n";
    }
    auto flat = small(Operation::CheckWeights);
    flat.weights = "custom:" + path;
    flat.n_max = 5000;
    CHECK(run_config(flat, out, log) == kExitVerdictFailed);
    std::remove(path.c_str());
}

TEST_CASE("outputs are byte-identical at any thread count") {
    for (auto op : {Operation::Sweep, Operation::Simulate, Operation::CheckModel, Operation::VerifyLemma2,
                    Operation::VerifyLemma3, Operation::VerifyLemma4}) {
        for (auto format : {OutputFormat::Csv, OutputFormat::Json}) {
            auto c = small(op);
            c.function = "soft-indicator:0,0.1";
            c.format = format;
            if (op == Operation::VerifyLemma2) c.pairs = {{4, 16}};
            if (op == Operation::CheckModel) c.grid = {};
            INFO(to_string(op));
            c.threads = 1;
            const auto one = execute(c);
            c.threads = 3;
            const auto three = execute(c);
            CHECK(one.payload == three.payload);
            CHECK(one.status == three.status);
            CHECK_FALSE(one.payload.empty());
        }
    }
}
