#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace asclt {

enum class Operation {
    CheckWeights,
    CheckModel,
    Simulate,
    VerifyLemma2,
    VerifyLemma3,
    VerifyLemma4,
    VerifyLemma5,
    Sweep,
    Integral,
};

/// "check-weights", "check-model", "simulate", "verify:lemma2".."verify:lemma5",
/// "sweep", "integral".
Operation parse_operation(std::string_view name);
std::string_view to_string(Operation op);

enum class OutputFormat { Csv, Json };

/// Everything a run needs. Defaults reproduce the headline experiment:
/// normal increments, harmonic weights, f = arctan, N = 10^6, 20 seeds.
struct ExperimentConfig {
    Operation operation = Operation::Sweep;
    std::string model = "normal";
    std::string weights = "harmonic";
    std::string function = "arctan";

    std::int64_t n_max = 1'000'000;
    std::vector<std::int64_t> checkpoints;  // empty: subsequence N_j plus decades
    std::vector<std::uint64_t> seeds;       // empty: seed_count seeds from master_seed
    std::uint64_t master_seed = 1;
    std::int64_t seed_count = 20;

    std::int64_t reps = 10'000;
    std::int64_t mean_reps = 100'000;

    double rho = 1.0;
    std::optional<double> r;  // default rho / 2
    double alpha = 0.5;
    double beta = 0.5;
    double eta = 0.9;
    double epsilon = 0.5;
    double c = 1.0;
    std::optional<int> mu;  // default max(2, ceil(4 / (rho - r)))
    int p = 2;

    std::int64_t burnin = 64;
    std::int64_t lag = 1;        // k of the lemma3 check
    std::int64_t start = 1;      // m of the lemma3 check
    std::vector<std::int64_t> grid;  // empty: per-operation default
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    std::string mode = "fast";  // lemma5 summation: fast | bruteforce | checked

    std::string out;  // empty: standard output
    OutputFormat format = OutputFormat::Csv;
    unsigned threads = 1;

    double effective_r() const { return r.value_or(rho / 2.0); }
    int effective_mu() const;
    std::vector<std::uint64_t> effective_seeds() const;
};

/// Smallest integer mu with mu >= max(2, 4 / (rho - r)).
int minimal_mu(double rho, double r);

/// Every violated constraint, each naming the inequality and the offending
/// values. Empty iff the config is valid.
std::vector<std::string> validate_config(const ExperimentConfig& config);

/// Overlays the keys present in `j` onto `base`. Unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});
nlohmann::json to_json(const ExperimentConfig& config);

/// "1,2,3" or "a..b" (inclusive).
std::vector<std::uint64_t> parse_seed_list(std::string_view text);
std::vector<std::int64_t> parse_index_list(std::string_view text);
/// "4:16,16:64"
std::vector<std::pair<std::int64_t, std::int64_t>> parse_pair_list(std::string_view text);

}  // namespace asclt
