#pragma once

namespace kura {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace kura
