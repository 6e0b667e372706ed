#pragma once

namespace qloss {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qloss
