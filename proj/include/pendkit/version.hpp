#pragma once

namespace pendkit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pendkit
