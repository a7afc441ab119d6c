#pragma once

#include "asclt/averaging.hpp"
#include "asclt/functions.hpp"
#include "asclt/models.hpp"
#include "asclt/report.hpp"
#include "asclt/verification.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace asclt {

/// Shortest round-trip decimal form; identical on every platform.
std::string format_double(double x);

nlohmann::json to_json(const ConditionReport& report);
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const ConvergenceTrace& trace);
nlohmann::json to_json(const PathSample& path);
nlohmann::json to_json(const IntegralResult& result);

/// condition,index,value[,se] rows followed by nothing else; the verdict
/// lives in the JSON form.
std::string to_csv(const ConditionReport& report);

/// grid fields..., lhs, se, rhs_structural, ratio, extra columns...
std::string to_csv(const BoundReport& report);

/// seed,N,A_N,target,abs_error
std::string to_csv(const ConvergenceTrace& trace);

/// k,S_k,T_k
std::string to_csv(const PathSample& path);

}  // namespace asclt
