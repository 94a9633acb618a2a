#pragma once

namespace hullfront {

inline constexpr const char* kVersion = "0.1.0";

} // namespace hullfront
