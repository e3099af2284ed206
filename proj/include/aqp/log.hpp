#pragma once

#include <string_view>

namespace aqp {

enum class LogLevel { debug = 0, info = 1, warn = 2, error = 3, off = 4 };

void set_log_level(LogLevel level);
LogLevel log_level();

/// Level named by the AQP_LOG environment variable ("debug", "info",
/// "warn", "error", "off"); `fallback` when unset or unrecognized.
LogLevel log_level_from_env(LogLevel fallback = LogLevel::warn);

bool log_enabled(LogLevel level);
void log_msg(LogLevel level, std::string_view message);

inline void log_debug(std::string_view m) { log_msg(LogLevel::debug, m); }
inline void log_info(std::string_view m) { log_msg(LogLevel::info, m); }
inline void log_warn(std::string_view m) { log_msg(LogLevel::warn, m); }
inline void log_error(std::string_view m) { log_msg(LogLevel::error, m); }

}  // namespace aqp
