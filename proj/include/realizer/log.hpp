#pragma once

// Minimal stderr logging, controlled by REALIZER_LOG in {quiet, info, debug}.

#include <cstdlib>
#include <iostream>
#include <string>
#include <string_view>

namespace realizer {

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

inline LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("REALIZER_LOG");
        if (!env) return LogLevel::Quiet;
        const std::string_view v(env);
        if (v == "debug") return LogLevel::Debug;
        if (v == "info") return LogLevel::Info;
        return LogLevel::Quiet;
    }();
    return level;
}

inline void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::Info) std::cerr << "[realizer] " << msg << "\n";
}

inline void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::Debug) std::cerr << "[realizer:debug] " << msg << "\n";
}

}  // namespace realizer
