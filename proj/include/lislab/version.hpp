#pragma once

namespace lislab {
inline constexpr const char* kVersion = "1.0.0";
}
