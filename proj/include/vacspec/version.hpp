#pragma once

namespace vacspec {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace vacspec
