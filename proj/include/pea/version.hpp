#pragma once

namespace pea {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pea
