#pragma once

namespace diffract {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace diffract
