#pragma once

namespace realizer {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace realizer
