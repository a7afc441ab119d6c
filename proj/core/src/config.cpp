#include "asclt/config.hpp"

#include "asclt/error.hpp"
#include "asclt/functions.hpp"
#include "asclt/models.hpp"
#include "asclt/weights.hpp"
#include "parse_util.hpp"

#include <cmath>
#include <sstream>

namespace asclt {

namespace {

constexpr std::pair<Operation, std::string_view> kOperationNames[] = {
    {Operation::CheckWeights, "check-weights"}, {Operation::CheckModel, "check-model"},
    {Operation::Simulate, "simulate"},          {Operation::VerifyLemma2, "verify:lemma2"},
    {Operation::VerifyLemma3, "verify:lemma3"}, {Operation::VerifyLemma4, "verify:lemma4"},
    {Operation::VerifyLemma5, "verify:lemma5"}, {Operation::Sweep, "sweep"},
    {Operation::Integral, "integral"},
};

std::string show(double x) {
    std::ostringstream out;
    out << x;
    return out.str();
}

std::int64_t parse_int(std::string_view text, std::string_view what) {
    text = detail::trim(text);
    std::int64_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw UsageError("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

Operation parse_operation(std::string_view name) {
    for (const auto& [op, text] : kOperationNames) {
        if (text == name) return op;
    }
    throw UsageError("unknown operation '" + std::string(name) + "'");
}

std::string_view to_string(Operation op) {
    for (const auto& [candidate, text] : kOperationNames) {
        if (candidate == op) return text;
    }
    return "unknown";
}

int minimal_mu(double rho, double r) {
    require(rho > r, "minimal_mu: needs r < rho");
    // 4/(rho - r) is often an integer up to rounding (4/0.4 = 10.000000000000002).
    const double bound = 4.0 / (rho - r);
    return std::max(2, static_cast<int>(std::ceil(bound - 1e-9)));
}

int ExperimentConfig::effective_mu() const {
    if (mu) return *mu;
    const double rr = effective_r();
    if (!(rho > rr) || !(rr > 0.0)) return 2;
    return minimal_mu(rho, rr);
}

std::vector<std::uint64_t> ExperimentConfig::effective_seeds() const {
    if (!seeds.empty()) return seeds;
    std::vector<std::uint64_t> out;
    for (std::int64_t i = 0; i < seed_count; ++i) out.push_back(master_seed + static_cast<std::uint64_t>(i));
    return out;
}

std::vector<std::string> validate_config(const ExperimentConfig& config) {
    std::vector<std::string> v;
    const auto fail = [&v](std::string message) { v.push_back(std::move(message)); };

    if (!(config.alpha > 0.0 && config.alpha < 1.0)) fail("α ∈ (0,1) violated: alpha=" + show(config.alpha));
    if (!(config.beta > 0.0 && config.beta < 1.0)) fail("β ∈ (0,1) violated: beta=" + show(config.beta));
    if (!(config.rho > 0.0)) fail("ρ > 0 violated: rho=" + show(config.rho));

    const double r = config.effective_r();
    if (!(r > 0.0)) fail("r > 0 violated: r=" + show(r));
    if (!(r < config.rho)) fail("r < ρ violated: r=" + show(r) + ", rho=" + show(config.rho));

    const int mu = config.effective_mu();
    if (r > 0.0 && r < config.rho) {
        const int needed = minimal_mu(config.rho, r);
        if (mu < needed) {
            fail("μ ≥ max(2, 4/(ρ−r)) violated: mu=" + std::to_string(mu) + " < " + std::to_string(needed) +
                 " (rho=" + show(config.rho) + ", r=" + show(r) + ")");
        }
    } else if (mu < 2) {
        fail("μ ≥ 2 violated: mu=" + std::to_string(mu));
    }
    if (config.p < 1) fail("p ≥ 1 violated: p=" + std::to_string(config.p));
    if (config.p > mu) fail("p ≤ μ violated: p=" + std::to_string(config.p) + ", mu=" + std::to_string(mu));
    if (!(config.eta < config.rho)) fail("η < ρ violated: eta=" + show(config.eta) + ", rho=" + show(config.rho));
    if (!(config.epsilon > 0.0)) fail("ε > 0 violated: epsilon=" + show(config.epsilon));
    if (!(config.c > 0.0)) fail("C > 0 violated: c=" + show(config.c));

    if (config.n_max < 1) fail("N_max ≥ 1 violated: n_max=" + std::to_string(config.n_max));
    if (config.reps < kMinReplicas) fail("reps ≥ 1000 violated: reps=" + std::to_string(config.reps));
    if (config.mean_reps < 2) fail("mean_reps ≥ 2 violated: mean_reps=" + std::to_string(config.mean_reps));
    if (config.threads < 1) fail("threads ≥ 1 violated");
    if (config.burnin < 1) fail("burn-in ≥ 1 violated: burnin=" + std::to_string(config.burnin));
    if (config.lag < 0) fail("k ≥ 0 violated: k=" + std::to_string(config.lag));
    if (config.start < 1) fail("m ≥ 1 violated: m=" + std::to_string(config.start));
    if (config.lag > config.start) {
        fail("k ≤ m violated: k=" + std::to_string(config.lag) + ", m=" + std::to_string(config.start));
    }
    if (config.seeds.empty() && config.seed_count < 1) fail("at least one seed required");

    for (std::size_t i = 0; i < config.checkpoints.size(); ++i) {
        const auto cp = config.checkpoints[i];
        if (cp < 1 || cp > config.n_max) {
            fail("1 ≤ checkpoint ≤ N_max violated: checkpoint=" + std::to_string(cp));
        }
        if (i > 0 && cp <= config.checkpoints[i - 1]) fail("checkpoints must be strictly increasing");
    }
    for (std::size_t i = 0; i < config.grid.size(); ++i) {
        if (config.grid[i] < 1) fail("grid values must be ≥ 1");
        if (i > 0 && config.grid[i] <= config.grid[i - 1]) fail("grid must be strictly increasing");
    }
    for (const auto& [k, l] : config.pairs) {
        if (k < 1 || k > l) fail("pairs need 1 ≤ k ≤ l: (" + std::to_string(k) + "," + std::to_string(l) + ")");
    }
    if (config.mode != "fast" && config.mode != "bruteforce" && config.mode != "checked") {
        fail("mode must be fast, bruteforce or checked: '" + config.mode + "'");
    }

    const auto check_spec = [&fail](auto&& parse, const std::string& spec) {
        try {
            parse(spec);
        } catch (const std::exception& e) {
            fail(e.what());
        }
    };
    check_spec([](const std::string& s) { SequenceModel::parse(s); }, config.model);
    check_spec([](const std::string& s) { WeightScheme::parse(s); }, config.weights);
    check_spec([](const std::string& s) { LipschitzFunction::parse(s); }, config.function);
    return v;
}

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig c) {
    require(j.is_object(), "config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "operation") {
            c.operation = parse_operation(value.get<std::string>());
        } else if (key == "model") {
            c.model = value.get<std::string>();
        } else if (key == "weights") {
            c.weights = value.get<std::string>();
        } else if (key == "function") {
            c.function = value.get<std::string>();
        } else if (key == "n_max") {
            c.n_max = value.get<std::int64_t>();
        } else if (key == "checkpoints") {
            c.checkpoints = value.get<std::vector<std::int64_t>>();
        } else if (key == "seeds") {
            c.seeds = value.get<std::vector<std::uint64_t>>();
        } else if (key == "master_seed") {
            c.master_seed = value.get<std::uint64_t>();
        } else if (key == "seed_count") {
            c.seed_count = value.get<std::int64_t>();
        } else if (key == "reps") {
            c.reps = value.get<std::int64_t>();
        } else if (key == "mean_reps") {
            c.mean_reps = value.get<std::int64_t>();
        } else if (key == "rho") {
            c.rho = value.get<double>();
        } else if (key == "r") {
            c.r = value.get<double>();
        } else if (key == "alpha") {
            c.alpha = value.get<double>();
        } else if (key == "beta") {
            c.beta = value.get<double>();
        } else if (key == "eta") {
            c.eta = value.get<double>();
        } else if (key == "epsilon") {
            c.epsilon = value.get<double>();
        } else if (key == "c") {
            c.c = value.get<double>();
        } else if (key == "mu") {
            c.mu = value.get<int>();
        } else if (key == "p") {
            c.p = value.get<int>();
        } else if (key == "burnin") {
            c.burnin = value.get<std::int64_t>();
        } else if (key == "k") {
            c.lag = value.get<std::int64_t>();
        } else if (key == "m") {
            c.start = value.get<std::int64_t>();
        } else if (key == "grid") {
            c.grid = value.get<std::vector<std::int64_t>>();
        } else if (key == "pairs") {
            c.pairs = value.get<std::vector<std::pair<std::int64_t, std::int64_t>>>();
        } else if (key == "mode") {
            c.mode = value.get<std::string>();
        } else if (key == "out") {
            c.out = value.get<std::string>();
        } else if (key == "format") {
            const auto f = value.get<std::string>();
            require(f == "csv" || f == "json", "format must be csv or json");
            c.format = f == "csv" ? OutputFormat::Csv : OutputFormat::Json;
        } else if (key == "threads") {
            c.threads = value.get<unsigned>();
        } else {
            throw UsageError("unknown config key '" + key + "'");
        }
    }
    return c;
}

nlohmann::json to_json(const ExperimentConfig& c) {
    nlohmann::json j = {
        {"operation", std::string(to_string(c.operation))},
        {"model", c.model},
        {"weights", c.weights},
        {"function", c.function},
        {"n_max", c.n_max},
        {"checkpoints", c.checkpoints},
        {"seeds", c.effective_seeds()},
        {"reps", c.reps},
        {"mean_reps", c.mean_reps},
        {"rho", c.rho},
        {"r", c.effective_r()},
        {"alpha", c.alpha},
        {"beta", c.beta},
        {"eta", c.eta},
        {"epsilon", c.epsilon},
        {"c", c.c},
        {"mu", c.effective_mu()},
        {"p", c.p},
        {"burnin", c.burnin},
        {"k", c.lag},
        {"m", c.start},
        {"grid", c.grid},
        {"pairs", c.pairs},
        {"mode", c.mode},
        {"format", c.format == OutputFormat::Csv ? "csv" : "json"},
    };
    return j;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
    std::vector<std::uint64_t> out;
    for (const auto& v : parse_index_list(text)) {
        require(v >= 0, "seeds must be non-negative");
        out.push_back(static_cast<std::uint64_t>(v));
    }
    return out;
}

std::vector<std::int64_t> parse_index_list(std::string_view text) {
    std::vector<std::int64_t> out;
    for (const auto item : detail::split(text, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string_view::npos) {
            out.push_back(parse_int(item, "integer"));
            continue;
        }
        const auto lo = parse_int(item.substr(0, dots), "range start");
        const auto hi = parse_int(item.substr(dots + 2), "range end");
        require(lo <= hi, "range start must not exceed range end");
        for (auto v = lo; v <= hi; ++v) out.push_back(v);
    }
    return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> parse_pair_list(std::string_view text) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (const auto item : detail::split(text, ',')) {
        const auto colon = item.find(':');
        require(colon != std::string_view::npos, "pairs are written k:l");
        out.emplace_back(parse_int(item.substr(0, colon), "k"), parse_int(item.substr(colon + 1), "l"));
    }
    return out;
}

}  // namespace asclt
