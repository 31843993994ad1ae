#pragma once

namespace ghost {
inline constexpr const char* kVersion = "0.1.0";
}
