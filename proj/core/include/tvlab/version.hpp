#pragma once

namespace tvlab {

inline constexpr const char* version = "0.1.0";

} // namespace tvlab
