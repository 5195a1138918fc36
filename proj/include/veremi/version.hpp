#pragma once

namespace veremi {

inline constexpr const char* kToolName = "veremi-bench";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace veremi
