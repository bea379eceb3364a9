#pragma once

#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace relm {

/// Log level from ROUGH_ELM_LOG: quiet | info (default) | debug.
inline int log_level() {
    static const int level = [] {
        const char* env = std::getenv("ROUGH_ELM_LOG");
        if (!env) return 1;
        if (std::strcmp(env, "quiet") == 0) return 0;
        if (std::strcmp(env, "debug") == 0) return 2;
        return 1;
    }();
    return level;
}

inline void log_info(const char* fmt, ...) {
    if (log_level() < 1) return;
    va_list args;
    va_start(args, fmt);
    std::vfprintf(stderr, fmt, args);
    std::fputc('\n', stderr);
    va_end(args);
}

inline void log_debug(const char* fmt, ...) {
    if (log_level() < 2) return;
    va_list args;
    va_start(args, fmt);
    std::vfprintf(stderr, fmt, args);
    std::fputc('\n', stderr);
    va_end(args);
}

}  // namespace relm
