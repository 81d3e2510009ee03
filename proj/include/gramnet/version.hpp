#pragma once

namespace gramnet {

inline constexpr const char* kToolVersion = "gramnet 0.1.0";

}  // namespace gramnet
