#include "obstrukt/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace obstrukt::log {

Level level() {
    static Level lv = [] {
        const char* e = std::getenv("OBSTRUKT_LOG");
        if (!e || !*e) return Level::quiet;
        std::string s(e);
        if (s == "debug" || s == "2") return Level::debug;
        if (s == "info" || s == "1") return Level::info;
        return Level::quiet;
    }();
    return lv;
}

void emit(Level lv, const std::string& msg) {
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    std::cerr << (lv == Level::debug ? "[obstrukt:debug] " : "[obstrukt] ") << msg << "\n";
}

}  // namespace obstrukt::log
