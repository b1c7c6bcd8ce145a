#pragma once

namespace grfkit {

#ifndef GRFKIT_VERSION_STRING
#define GRFKIT_VERSION_STRING "0.0.0"
#endif

inline constexpr const char* version() { return GRFKIT_VERSION_STRING; }

} // namespace grfkit
