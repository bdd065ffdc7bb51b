#pragma once

#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <string>

namespace rle {

enum class LogLevel { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

// Verbosity comes from the RLE_LOG environment variable
// (error|warn|info|debug); unset or unrecognized means warn.
inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("RLE_LOG");
    if (env == nullptr) return LogLevel::kWarn;
    const std::string v(env);
    if (v == "error") return LogLevel::kError;
    if (v == "warn") return LogLevel::kWarn;
    if (v == "info") return LogLevel::kInfo;
    if (v == "debug") return LogLevel::kDebug;
    return LogLevel::kWarn;
  }();
  return level;
}

inline void log_at(LogLevel lv, const char* tag, const std::string& msg) {
  if (lv > log_level()) return;
  static std::mutex mu;
  const std::lock_guard<std::mutex> lock(mu);
  std::fprintf(stderr, "[%s] %s\n", tag, msg.c_str());
}

inline void log_error(const std::string& msg) { log_at(LogLevel::kError, "error", msg); }
inline void log_warn(const std::string& msg) { log_at(LogLevel::kWarn, "warn", msg); }
inline void log_info(const std::string& msg) { log_at(LogLevel::kInfo, "info", msg); }
inline void log_debug(const std::string& msg) { log_at(LogLevel::kDebug, "debug", msg); }

}  // namespace rle
