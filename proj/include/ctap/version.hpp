#pragma once

namespace ctap {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ctap
