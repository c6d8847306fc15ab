#pragma once

namespace surgery {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace surgery
