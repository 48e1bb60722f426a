#pragma once

#include <string_view>

namespace juntawalk {

enum class LogLevel { quiet = 0, warning = 1, info = 2 };

// Initial level comes from JUNTA_WALK_LOG (quiet|warning|info), default warning.
void set_log_level(LogLevel level);
LogLevel log_level();

void log_warning(std::string_view message);
void log_info(std::string_view message);

}  // namespace juntawalk
