#pragma once

namespace ruminlab {
inline constexpr const char* kVersion = "0.1.0";
}
