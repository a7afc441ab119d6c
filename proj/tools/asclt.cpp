// asclt: command-line front end for the logarithmic-averaging toolkit.
//
//   asclt [subcommand] [flags]
//
// With no subcommand the default sweep runs (normal increments, harmonic
// weights, f = arctan, N = 10^6, 20 seeds).

#include "asclt/config.hpp"
#include "asclt/error.hpp"
#include "asclt/runner.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

template <class T>
void override(std::optional<T>& flag, T& field) {
    if (flag) field = *flag;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted logarithmic averages of normalized partial sums: simulation and bound checks"};
    app.fallthrough();
    app.require_subcommand(0, 1);

    auto* check_weights = app.add_subcommand("check-weights", "weight conditions C2, C3, D_N growth, D_{N+1}/D_N");
    auto* check_model = app.add_subcommand("check-model", "normalization growth bound and mu-th moment");
    auto* simulate = app.add_subcommand("simulate", "dump one path as k,S_k,T_k");
    auto* verify = app.add_subcommand("verify", "Monte Carlo / deterministic bound checks");
    std::string lemma;
    verify->add_option("lemma", lemma, "lemma2 | lemma3 | lemma4 | lemma5")
        ->required()
        ->check(CLI::IsMember({"lemma2", "lemma3", "lemma4", "lemma5"}));
    auto* sweep = app.add_subcommand("sweep", "convergence of A_N across seeds and checkpoints");
    auto* integral = app.add_subcommand("integral", "integral of f against the limit law, Lipschitz audit");

    std::optional<std::string> config_path, model, weights, function, seeds, checkpoints, grid, pairs, out, format,
        mode;
    std::optional<std::int64_t> n_max, reps, mean_reps, burnin, k, m;
    std::optional<double> alpha, beta, rho, r, eta, epsilon, c;
    std::optional<int> mu, p;
    std::optional<unsigned> threads;

    app.add_option("--config", config_path, "JSON config file; flags override its fields");
    app.add_option("--model", model, "normal | rademacher | uniform | exponential [:a=..,b=..,form=..]");
    app.add_option("--weights", weights, "harmonic | power:<theta> | powerlog:<gamma> | custom:<file>");
    app.add_option("--function", function,
                   "constant:<c> | identity | abs | arctan | clamp:<lo>,<hi> | soft-indicator:<x0>,<delta>");
    app.add_option("--n-max", n_max, "path length / largest index");
    app.add_option("--checkpoints", checkpoints, "sweep checkpoints, e.g. 1000,10000");
    app.add_option("--seeds", seeds, "seed list, e.g. 1,2,3 or 1..20");
    app.add_option("--reps", reps, "Monte Carlo replicas");
    app.add_option("--mean-reps", mean_reps, "replicas for the centring-mean table");
    app.add_option("--alpha", alpha);
    app.add_option("--beta", beta);
    app.add_option("--rho", rho);
    app.add_option("--r", r);
    app.add_option("--mu", mu);
    app.add_option("--p", p);
    app.add_option("--eta", eta);
    app.add_option("--epsilon", epsilon, "exponent for the D_N / N^epsilon trace");
    app.add_option("--c", c, "constant C of the normalization growth bound");
    app.add_option("--burnin", burnin, "burn-in index for the monotonicity check");
    app.add_option("--k", k, "lemma3: lag k");
    app.add_option("--m", m, "lemma3: first summation index m");
    app.add_option("--grid", grid, "index grid, e.g. 64,128,256");
    app.add_option("--pairs", pairs, "lemma2 / check-model pairs, e.g. 4:16,16:64");
    app.add_option("--mode", mode, "lemma5 summation: fast | bruteforce | checked");
    app.add_option("--out", out, "output file (default: stdout)");
    app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int status = app.exit(e);
        return status == 0 ? asclt::kExitPass : asclt::kExitUsage;
    }

    asclt::ExperimentConfig config;
    try {
        if (config_path) {
            std::ifstream in(*config_path);
            if (!in) throw asclt::UsageError("cannot open config " + *config_path);
            config = asclt::config_from_json(nlohmann::json::parse(in));
        }
        if (check_weights->parsed()) config.operation = asclt::Operation::CheckWeights;
        if (check_model->parsed()) config.operation = asclt::Operation::CheckModel;
        if (simulate->parsed()) config.operation = asclt::Operation::Simulate;
        if (verify->parsed()) config.operation = asclt::parse_operation("verify:" + lemma);
        if (sweep->parsed()) config.operation = asclt::Operation::Sweep;
        if (integral->parsed()) config.operation = asclt::Operation::Integral;

        override(model, config.model);
        override(weights, config.weights);
        override(function, config.function);
        override(n_max, config.n_max);
        override(reps, config.reps);
        override(mean_reps, config.mean_reps);
        override(alpha, config.alpha);
        override(beta, config.beta);
        override(rho, config.rho);
        override(eta, config.eta);
        override(epsilon, config.epsilon);
        override(c, config.c);
        override(p, config.p);
        override(burnin, config.burnin);
        override(k, config.lag);
        override(m, config.start);
        override(mode, config.mode);
        override(out, config.out);
        override(threads, config.threads);
        if (r) config.r = *r;
        if (mu) config.mu = *mu;
        if (format) config.format = *format == "json" ? asclt::OutputFormat::Json : asclt::OutputFormat::Csv;
        if (checkpoints) config.checkpoints = asclt::parse_index_list(*checkpoints);
        if (grid) config.grid = asclt::parse_index_list(*grid);
        if (pairs) config.pairs = asclt::parse_pair_list(*pairs);
        if (seeds) {
            config.seeds = asclt::parse_seed_list(*seeds);
        } else if (const char* env = std::getenv("ASCLT_SEED"); env != nullptr && config.seeds.empty()) {
            config.master_seed = asclt::parse_seed_list(env).at(0);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return asclt::kExitUsage;
    }

    return asclt::run_config(config, std::cout, std::cerr);
}
