#pragma once

namespace sepsys {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace sepsys
