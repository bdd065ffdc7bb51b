#pragma once

namespace rle {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rle
