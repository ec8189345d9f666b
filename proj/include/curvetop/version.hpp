#pragma once

namespace curvetop {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace curvetop
