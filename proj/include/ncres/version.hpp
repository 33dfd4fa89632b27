#pragma once

namespace ncres {

inline constexpr const char* kVersion = "0.1.0";

} // namespace ncres
