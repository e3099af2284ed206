#include "aqp/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <string>

namespace aqp {
namespace {

std::atomic<LogLevel> g_level{LogLevel::warn};

std::string_view level_tag(LogLevel level) {
  switch (level) {
    case LogLevel::debug: return "debug";
    case LogLevel::info: return "info";
    case LogLevel::warn: return "warn";
    case LogLevel::error: return "error";
    case LogLevel::off: return "off";
  }
  return "?";
}

}  // namespace

void set_log_level(LogLevel level) { g_level.store(level); }

LogLevel log_level() { return g_level.load(); }

LogLevel log_level_from_env(LogLevel fallback) {
  const char* raw = std::getenv("AQP_LOG");
  if (raw == nullptr) return fallback;
  std::string v(raw);
  if (v == "debug") return LogLevel::debug;
  if (v == "info") return LogLevel::info;
  if (v == "warn") return LogLevel::warn;
  if (v == "error") return LogLevel::error;
  if (v == "off") return LogLevel::off;
  return fallback;
}

bool log_enabled(LogLevel level) {
  return level != LogLevel::off && level >= g_level.load();
}

void log_msg(LogLevel level, std::string_view message) {
  if (!log_enabled(level)) return;
  std::cerr << "[" << level_tag(level) << "] " << message << "\n";
}

}  // namespace aqp
