#pragma once

#include <string_view>

namespace mxplex {

enum class LogLevel { kQuiet, kWarning, kInfo };

void set_log_level(LogLevel level);
LogLevel log_level();

// Messages go to stderr, serialized across threads.
void log_warning(std::string_view msg);
void log_info(std::string_view msg);

}  // namespace mxplex
