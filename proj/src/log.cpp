#include "mxplex/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace mxplex {

namespace {
std::atomic<LogLevel> g_level{LogLevel::kWarning};
std::mutex g_mutex;
}  // namespace

void set_log_level(LogLevel level) { g_level.store(level); }
LogLevel log_level() { return g_level.load(); }

void log_warning(std::string_view msg) {
  if (g_level.load() < LogLevel::kWarning) return;
  std::lock_guard lock(g_mutex);
  std::cerr << "[mxplex] warning: " << msg << '\n';
}

void log_info(std::string_view msg) {
  if (g_level.load() < LogLevel::kInfo) return;
  std::lock_guard lock(g_mutex);
  std::cerr << "[mxplex] " << msg << '\n';
}

}  // namespace mxplex
