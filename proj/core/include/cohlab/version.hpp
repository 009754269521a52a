#pragma once

namespace cohlab {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace cohlab
