#pragma once

namespace hmhd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hmhd
