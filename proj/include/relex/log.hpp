// Minimal stderr logger. Verbosity comes from the RELEX_LOG environment
// variable: off | warn | info | debug (default warn).

#pragma once

#include <sstream>
#include <string>

namespace relex::log {

enum class Level { Off = 0, Warn = 1, Info = 2, Debug = 3 };

Level level();
void set_level(Level lv);
void init_from_env();

void write(Level lv, const std::string& msg);

template <typename... Args>
void emit(Level lv, Args&&... args) {
    if (lv > level()) return;
    std::ostringstream os;
    (os << ... << args);
    write(lv, os.str());
}

template <typename... Args>
void warn(Args&&... args) {
    emit(Level::Warn, std::forward<Args>(args)...);
}
template <typename... Args>
void info(Args&&... args) {
    emit(Level::Info, std::forward<Args>(args)...);
}
template <typename... Args>
void debug(Args&&... args) {
    emit(Level::Debug, std::forward<Args>(args)...);
}

}  // namespace relex::log
