#pragma once

namespace gsent {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gsent
