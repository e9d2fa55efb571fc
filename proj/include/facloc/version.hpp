#pragma once

namespace facloc {

inline constexpr const char* kVersion = "0.1.0";

}
