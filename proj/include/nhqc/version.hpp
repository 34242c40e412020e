#pragma once

namespace nhqc {
inline constexpr const char* kVersion = "0.1.0";
}
