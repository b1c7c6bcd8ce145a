#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace grfcli {

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

// Verbosity comes from GRF_TOOLKIT_LOG: quiet|info|debug (or 0|1|2).
// Unset or unrecognized values mean info.
inline LogLevel log_level() {
    static const LogLevel level = [] {
        const char* raw = std::getenv("GRF_TOOLKIT_LOG");
        if (!raw) return LogLevel::info;
        const std::string v(raw);
        if (v == "quiet" || v == "0") return LogLevel::quiet;
        if (v == "debug" || v == "2") return LogLevel::debug;
        return LogLevel::info;
    }();
    return level;
}

inline void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::info) std::fprintf(stderr, "%s\n", msg.c_str());
}

inline void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::debug) std::fprintf(stderr, "%s\n", msg.c_str());
}

} // namespace grfcli
