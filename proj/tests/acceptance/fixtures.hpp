#pragma once

// Values frozen from independent runs; see tests/oracles.

namespace fixture {

// Median over 20 seeds of |A_N| (arctan, harmonic, N = 10^6): 0.999 quantile
// of the bootstrap distribution from tests/oracles/pilot_log_average.py
// (400 NumPy paths, 20000 resamples). Quantiles 0.5 / 0.99 / 0.999 were
// 0.2157 / 0.3541 / 0.4101.
inline constexpr double kPilotMedianBound = 0.41;

// Exact integral of the soft indicator (x0 = 0, delta = 0.1) against the
// standard normal, mpmath at 30 digits.
inline constexpr double kSoftIndicatorIntegral = 0.519930508032819858;

// Largest ratio (LHS / structural RHS) over N = 2^6..2^13 on the first run of
// the p = 2 Monte Carlo check (identity, normal, harmonic, seed 1, 10^5 reps).
inline constexpr double kLemma4RatioCeiling = 1.8919;

}  // namespace fixture
