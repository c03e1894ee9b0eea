#pragma once

namespace rdg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rdg
