#include "juntawalk/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace juntawalk {
namespace {

LogLevel initial_level() {
  const char* env = std::getenv("JUNTA_WALK_LOG");
  if (env == nullptr) return LogLevel::warning;
  const std::string value(env);
  if (value == "quiet") return LogLevel::quiet;
  if (value == "info") return LogLevel::info;
  return LogLevel::warning;
}

std::atomic<int>& level_storage() {
  static std::atomic<int> level{static_cast<int>(initial_level())};
  return level;
}

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

void emit(LogLevel level, std::string_view tag, std::string_view message) {
  if (static_cast<int>(level) > level_storage().load()) return;
  std::lock_guard<std::mutex> lock(sink_mutex());
  std::clog << "[junta-walk " << tag << "] " << message << '\n';
}

}  // namespace

void set_log_level(LogLevel level) {
  level_storage().store(static_cast<int>(level));
}

LogLevel log_level() { return static_cast<LogLevel>(level_storage().load()); }

void log_warning(std::string_view message) {
  emit(LogLevel::warning, "warning", message);
}

void log_info(std::string_view message) {
  emit(LogLevel::info, "info", message);
}

}  // namespace juntawalk
