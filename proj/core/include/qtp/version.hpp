#pragma once

namespace qtp {
inline constexpr const char* kVersion = "0.1.0";
}
