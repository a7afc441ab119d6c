#pragma once

#include <cstdint>

namespace asclt::streams {

// Substream identifiers for derive_seed(seed, stream, index).
inline constexpr std::uint64_t kPath = 0;
inline constexpr std::uint64_t kMoment = 1;
inline constexpr std::uint64_t kMeanTable = 2;
inline constexpr std::uint64_t kLemma2 = 3;
inline constexpr std::uint64_t kLemma3 = 4;
inline constexpr std::uint64_t kLemma4 = 5;

}  // namespace asclt::streams
