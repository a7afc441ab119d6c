#pragma once

#include "asclt/config.hpp"

#include <iosfwd>
#include <string>

namespace asclt {

/// Process exit statuses of run_config.
inline constexpr int kExitPass = 0;
inline constexpr int kExitVerdictFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunOutcome {
    int status = kExitPass;
    std::string payload;  // the CSV or JSON document that was written
};

/// Renders the result document of one operation without touching the
/// filesystem. Throws on invalid input.
RunOutcome execute(const ExperimentConfig& config);

/// Validates, dispatches, writes the document to config.out (or `out` when
/// empty) and returns the exit status: 0 all verdicts pass, 1 a verdict
/// failed, 2 usage or configuration error. Diagnostics go to `log`.
int run_config(const ExperimentConfig& config, std::ostream& out, std::ostream& log);

}  // namespace asclt
