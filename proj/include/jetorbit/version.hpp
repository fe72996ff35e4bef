#pragma once

namespace jetorbit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace jetorbit
