// Diagnostics on stderr, controlled by the OBSTRUKT_LOG environment variable:
// unset/empty = quiet, "info"/"1" = progress messages, "debug"/"2" = verbose.
#pragma once

#include <sstream>
#include <string>

namespace obstrukt::log {

enum class Level { quiet = 0, info = 1, debug = 2 };

Level level();

void emit(Level lv, const std::string& msg);

template <typename... Args>
void info(Args&&... args) {
    if (level() < Level::info) return;
    std::ostringstream os;
    (os << ... << args);
    emit(Level::info, os.str());
}

template <typename... Args>
void debug(Args&&... args) {
    if (level() < Level::debug) return;
    std::ostringstream os;
    (os << ... << args);
    emit(Level::debug, os.str());
}

}  // namespace obstrukt::log
