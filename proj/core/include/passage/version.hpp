#pragma once

namespace passage {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "passage";

}  // namespace passage
