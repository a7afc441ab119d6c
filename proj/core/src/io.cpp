#include "asclt/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace asclt {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 64> buffer{};
    const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), x);
    return std::string(buffer.data(), end);
}

namespace {

// JSON has no infinities; write them as strings.
nlohmann::json number(double x) {
    if (std::isfinite(x)) return x;
    return format_double(x);
}

nlohmann::json numbers(const std::vector<double>& xs) {
    auto out = nlohmann::json::array();
    for (double x : xs) out.push_back(number(x));
    return out;
}

}  // namespace

nlohmann::json to_json(const ConditionReport& report) {
    nlohmann::json j;
    j["condition"] = std::string(to_string(report.condition));
    j["sup_statistic"] = number(report.sup_statistic);
    j["threshold"] = number(report.threshold);
    j["violation_indices"] = report.violation_indices;
    auto trace = nlohmann::json::array();
    for (std::size_t i = 0; i < report.trace.size(); ++i) {
        nlohmann::json row = {{"index", report.trace[i].first}, {"value", number(report.trace[i].second)}};
        if (i < report.trace_se.size()) row["se"] = number(report.trace_se[i]);
        trace.push_back(std::move(row));
    }
    j["trace"] = std::move(trace);
    j["verdict"] = report.pass ? "pass" : "fail";
    return j;
}

nlohmann::json to_json(const BoundReport& report) {
    nlohmann::json j;
    j["lemma"] = std::string(to_string(report.lemma));
    j["grid_fields"] = report.grid_fields;
    j["grid"] = report.grid;
    j["lhs"] = numbers(report.lhs);
    j["se"] = numbers(report.se);
    j["rhs_structural"] = numbers(report.rhs_structural);
    j["ratio"] = numbers(report.ratio);
    for (const auto& [name, column] : report.extra_columns) j[name] = numbers(column);
    nlohmann::json scalars = nlohmann::json::object();
    for (const auto& [name, value] : report.scalars) scalars[name] = number(value);
    j["parameters"] = std::move(scalars);
    j["ceiling"] = number(report.ceiling);
    j["verdict"] = report.pass ? "pass" : "fail";
    return j;
}

nlohmann::json to_json(const ConvergenceTrace& trace) {
    nlohmann::json j;
    j["checkpoints"] = trace.checkpoints;
    j["target"] = number(trace.target);
    auto per_seed = nlohmann::json::array();
    for (std::size_t s = 0; s < trace.seeds.size(); ++s) {
        per_seed.push_back({{"seed", trace.seeds[s]}, {"A_N", numbers(trace.per_seed[s])}});
    }
    j["per_seed"] = std::move(per_seed);
    j["summary"] = {{"median_abs_error", numbers(trace.median_abs_error)},
                    {"max_abs_error", numbers(trace.max_abs_error)}};
    return j;
}

nlohmann::json to_json(const PathSample& path) {
    return {{"N", path.n},
            {"seed", path.seed},
            {"model", path.model_id},
            {"S", numbers(path.partial_sums)},
            {"T", numbers(path.normalized)}};
}

nlohmann::json to_json(const IntegralResult& result) {
    return {{"value", number(result.value)},
            {"error_estimate", number(result.error_estimate)},
            {"method", result.method == IntegralMethod::ClosedForm ? "closed_form" : "quadrature"}};
}

std::string to_csv(const ConditionReport& report) {
    std::ostringstream out;
    const bool with_se = !report.trace_se.empty();
    out << "condition,index,value" << (with_se ? ",se" : "") << '\n';
    for (std::size_t i = 0; i < report.trace.size(); ++i) {
        out << to_string(report.condition) << ',' << report.trace[i].first << ','
            << format_double(report.trace[i].second);
        if (with_se) out << ',' << format_double(report.trace_se[i]);
        out << '\n';
    }
    return out.str();
}

std::string to_csv(const BoundReport& report) {
    std::ostringstream out;
    for (const auto& field : report.grid_fields) out << field << ',';
    out << "lhs,se,rhs_structural,ratio";
    for (const auto& column : report.extra_columns) out << ',' << column.first;
    out << '\n';
    for (std::size_t i = 0; i < report.lhs.size(); ++i) {
        for (const auto value : report.grid[i]) out << value << ',';
        out << format_double(report.lhs[i]) << ',' << format_double(report.se[i]) << ','
            << format_double(report.rhs_structural[i]) << ',' << format_double(report.ratio[i]);
        for (const auto& column : report.extra_columns) out << ',' << format_double(column.second[i]);
        out << '\n';
    }
    return out.str();
}

std::string to_csv(const ConvergenceTrace& trace) {
    std::ostringstream out;
    out << "seed,N,A_N,target,abs_error\n";
    for (std::size_t s = 0; s < trace.seeds.size(); ++s) {
        for (std::size_t c = 0; c < trace.checkpoints.size(); ++c) {
            const double a = trace.per_seed[s][c];
            out << trace.seeds[s] << ',' << trace.checkpoints[c] << ',' << format_double(a) << ','
                << format_double(trace.target) << ',' << format_double(std::abs(a - trace.target)) << '\n';
        }
    }
    return out.str();
}

std::string to_csv(const PathSample& path) {
    std::ostringstream out;
    out << "k,S_k,T_k\n";
    for (std::size_t i = 0; i < path.partial_sums.size(); ++i) {
        out << (i + 1) << ',' << format_double(path.partial_sums[i]) << ',' << format_double(path.normalized[i])
            << '\n';
    }
    return out.str();
}

}  // namespace asclt
