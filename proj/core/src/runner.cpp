#include "asclt/runner.hpp"

#include "asclt/averaging.hpp"
#include "asclt/error.hpp"
#include "asclt/functions.hpp"
#include "asclt/io.hpp"
#include "asclt/models.hpp"
#include "asclt/verification.hpp"
#include "asclt/weights.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace asclt {

namespace {

struct Document {
    nlohmann::json json;
    std::string csv;
    bool pass = true;
};

std::string reports_csv(const std::vector<ConditionReport>& reports) {
    std::ostringstream out;
    out << "condition,index,value,se\n";
    for (const auto& report : reports) {
        for (std::size_t i = 0; i < report.trace.size(); ++i) {
            out << to_string(report.condition) << ',' << report.trace[i].first << ','
                << format_double(report.trace[i].second) << ',';
            if (i < report.trace_se.size()) out << format_double(report.trace_se[i]);
            out << '\n';
        }
    }
    return out.str();
}

Document reports_document(const std::vector<ConditionReport>& reports) {
    Document doc;
    doc.json["reports"] = nlohmann::json::array();
    for (const auto& report : reports) {
        doc.json["reports"].push_back(to_json(report));
        doc.pass = doc.pass && report.pass;
    }
    doc.csv = reports_csv(reports);
    return doc;
}

Document bound_document(const BoundReport& report) {
    return {to_json(report), to_csv(report), report.pass};
}

MonteCarloOptions mc_options(const ExperimentConfig& config) {
    MonteCarloOptions options;
    options.reps = config.reps;
    options.seed = config.effective_seeds().front();
    options.threads = config.threads;
    options.mean_reps = config.mean_reps;
    options.mean_seed = derive_seed(options.seed, 0xA11CE, 0);
    return options;
}

std::vector<std::int64_t> grid_or(const ExperimentConfig& config, std::vector<std::int64_t> fallback) {
    return config.grid.empty() ? fallback : config.grid;
}

Document check_weights(const ExperimentConfig& config) {
    const auto scheme = WeightScheme::parse(config.weights);
    const std::int64_t k_max = config.n_max;
    std::vector<ConditionReport> reports;
    reports.push_back(check_c2(scheme, config.alpha, config.burnin, k_max));
    reports.push_back(check_c3(scheme, config.rho, k_max));
    const auto lemma1_grid = grid_or(config, decade_grid(std::min<std::int64_t>(100, k_max), k_max));
    reports.push_back(lemma1_trace(scheme, config.epsilon, lemma1_grid));
    if (k_max >= 2) {
        const auto ratio_grid = decade_grid(1, k_max - 1);
        reports.push_back(ratio_consecutive(scheme, ratio_grid));
    }
    return reports_document(reports);
}

Document check_model(const ExperimentConfig& config) {
    const auto model = SequenceModel::parse(config.model);
    auto pairs = config.pairs;
    if (pairs.empty()) {
        for (std::int64_t l = 1; l <= 1024; l *= 2) pairs.emplace_back(1, l);
        pairs.emplace_back(16, 64);
        pairs.emplace_back(100, 1000);
    }
    std::vector<ConditionReport> reports;
    reports.push_back(check_c4_growth(model, config.c, config.beta, pairs));
    const auto n_grid = grid_or(config, {10, 100, 1000});
    reports.push_back(estimate_mu_moment(model, n_grid, config.effective_mu(), config.reps,
                                         config.effective_seeds().front(), config.threads));
    return reports_document(reports);
}

Document simulate(const ExperimentConfig& config) {
    const auto model = SequenceModel::parse(config.model);
    const auto path = simulate_path(model, config.n_max, config.effective_seeds().front());
    return {to_json(path), to_csv(path), true};
}

Document lemma5(const ExperimentConfig& config) {
    const auto scheme = WeightScheme::parse(config.weights);
    const auto grid = grid_or(config, decade_grid(std::min<std::int64_t>(10, config.n_max), config.n_max));
    const SumMode mode = config.mode == "bruteforce" ? SumMode::BruteForce
                         : config.mode == "checked"  ? SumMode::Checked
                                                     : SumMode::Fast;
    const auto report = lemma5_ratio(scheme, config.alpha, config.eta, grid, mode, config.rho);
    const auto sums = weighted_double_sums(scheme, config.alpha, grid, SumMode::Fast);
    const auto prefix = prefix_sums(scheme, grid.back());

    Document doc;
    doc.json = to_json(report);
    std::ostringstream csv;
    csv << "N,D_N,S_N,ratio\n";
    auto rows = nlohmann::json::array();
    std::size_t t = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = prefix.at(grid[i]);
        const bool evaluated = t < report.trace.size() && report.trace[t].first == grid[i];
        const double ratio = evaluated ? report.trace[t++].second : std::numeric_limits<double>::quiet_NaN();
        csv << grid[i] << ',' << format_double(d) << ',' << format_double(sums[i]) << ',' << format_double(ratio)
            << '\n';
        rows.push_back({{"N", grid[i]}, {"D_N", d}, {"S_N", sums[i]}, {"ratio", format_double(ratio)}});
    }
    doc.json["rows"] = std::move(rows);
    doc.csv = csv.str();
    doc.pass = report.pass;
    return doc;
}

bool sweep_verdict(const ConvergenceTrace& trace) {
    std::vector<double> medians;
    for (std::size_t c = 0; c < trace.checkpoints.size(); ++c) {
        std::int64_t n = trace.checkpoints[c];
        if (n < 1000) continue;
        while (n % 10 == 0) n /= 10;
        if (n == 1) medians.push_back(trace.median_abs_error[c]);
    }
    for (std::size_t i = 1; i < medians.size(); ++i) {
        if (!(medians[i] < medians[i - 1])) return false;
    }
    return true;
}

Document sweep(const ExperimentConfig& config) {
    const auto model = SequenceModel::parse(config.model);
    const auto scheme = WeightScheme::parse(config.weights);
    const auto f = LipschitzFunction::parse(config.function);
    const auto checkpoints =
        config.checkpoints.empty() ? default_checkpoints(scheme, config.n_max) : config.checkpoints;
    const auto seeds = config.effective_seeds();
    const auto trace = run_experiment(model, scheme, f, config.n_max, checkpoints, seeds, config.threads);
    Document doc{to_json(trace), to_csv(trace), sweep_verdict(trace)};
    doc.json["verdict"] = doc.pass ? "pass" : "fail";
    return doc;
}

Document integral(const ExperimentConfig& config) {
    const auto model = SequenceModel::parse(config.model);
    const auto f = LipschitzFunction::parse(config.function);
    const auto result = integral_against(f, model.limit);
    const auto audit = lipschitz_audit(f);
    Document doc;
    doc.json = to_json(result);
    doc.json["function"] = f.describe();
    doc.json["limit_law"] = std::string(model.limit.name());
    doc.json["lipschitz_audit"] = to_json(audit);
    std::ostringstream csv;
    csv << "function,value,error_estimate,method,lipschitz_declared,lipschitz_empirical\n"
        << f.describe() << ',' << format_double(result.value) << ',' << format_double(result.error_estimate) << ','
        << (result.method == IntegralMethod::ClosedForm ? "closed_form" : "quadrature") << ','
        << format_double(f.lipschitz_constant()) << ',' << format_double(audit.sup_statistic) << '\n';
    doc.csv = csv.str();
    doc.pass = audit.pass;
    return doc;
}

}  // namespace

RunOutcome execute(const ExperimentConfig& config) {
    const auto violations = validate_config(config);
    if (!violations.empty()) {
        std::string message = "invalid configuration:";
        for (const auto& v : violations) message += "\n  " + v;
        throw UsageError(message);
    }

    Document doc;
    switch (config.operation) {
        case Operation::CheckWeights: doc = check_weights(config); break;
        case Operation::CheckModel: doc = check_model(config); break;
        case Operation::Simulate: doc = simulate(config); break;
        case Operation::VerifyLemma2: {
            const auto model = SequenceModel::parse(config.model);
            const auto f = LipschitzFunction::parse(config.function);
            auto pairs = config.pairs;
            if (pairs.empty()) pairs = {{4, 16}, {16, 64}, {64, 256}};
            doc = bound_document(lemma2_check(model, f, pairs, config.beta, mc_options(config)));
            break;
        }
        case Operation::VerifyLemma3: {
            const auto model = SequenceModel::parse(config.model);
            const auto scheme = WeightScheme::parse(config.weights);
            const auto f = LipschitzFunction::parse(config.function);
            const auto grid = grid_or(config, power_of_two_grid(6, 10));
            doc = bound_document(lemma3_check(model, scheme, f, config.lag, config.start, grid, config.p,
                                              config.beta, mc_options(config)));
            break;
        }
        case Operation::VerifyLemma4: {
            const auto model = SequenceModel::parse(config.model);
            const auto scheme = WeightScheme::parse(config.weights);
            const auto f = LipschitzFunction::parse(config.function);
            const auto grid = grid_or(config, power_of_two_grid(6, 13));
            doc = bound_document(lemma4_check(model, scheme, f, grid, config.p, config.beta, config.effective_mu(),
                                              mc_options(config)));
            break;
        }
        case Operation::VerifyLemma5: doc = lemma5(config); break;
        case Operation::Sweep: doc = sweep(config); break;
        case Operation::Integral: doc = integral(config); break;
    }

    RunOutcome outcome;
    outcome.status = doc.pass ? kExitPass : kExitVerdictFailed;
    if (config.format == OutputFormat::Json) {
        nlohmann::json wrapped = {{"config", to_json(config)}, {"result", std::move(doc.json)}};
        outcome.payload = wrapped.dump(2) + "\n";
    } else {
        outcome.payload = std::move(doc.csv);
    }
    return outcome;
}

int run_config(const ExperimentConfig& config, std::ostream& out, std::ostream& log) {
    RunOutcome outcome;
    try {
        outcome = execute(config);
    } catch (const ConsistencyError& e) {
        log << "error: " << e.what() << '\n';
        return kExitVerdictFailed;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    if (config.out.empty()) {
        out << outcome.payload;
    } else {
        std::ofstream file(config.out, std::ios::binary | std::ios::trunc);
        if (!file) {
            log << "error: cannot open " << config.out << " for writing\n";
            return kExitUsage;
        }
        file << outcome.payload;
    }
    log << to_string(config.operation) << ": " << (outcome.status == kExitPass ? "pass" : "fail") << '\n';
    return outcome.status;
}

}  // namespace asclt
