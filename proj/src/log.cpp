#include "relex/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>

namespace relex::log {

namespace {
std::atomic<int> g_level{static_cast<int>(Level::Warn)};
std::mutex g_mu;

const char* tag(Level lv) {
    switch (lv) {
        case Level::Warn:
            return "warn";
        case Level::Info:
            return "info";
        case Level::Debug:
            return "debug";
        default:
            return "";
    }
}
}  // namespace

Level level() { return static_cast<Level>(g_level.load(std::memory_order_relaxed)); }

void set_level(Level lv) { g_level.store(static_cast<int>(lv), std::memory_order_relaxed); }

void init_from_env() {
    const char* v = std::getenv("RELEX_LOG");
    if (!v) return;
    std::string s(v);
    if (s == "off") set_level(Level::Off);
    else if (s == "warn") set_level(Level::Warn);
    else if (s == "info") set_level(Level::Info);
    else if (s == "debug") set_level(Level::Debug);
}

void write(Level lv, const std::string& msg) {
    std::lock_guard<std::mutex> lock(g_mu);
    std::cerr << "relex [" << tag(lv) << "] " << msg << "\n";
}

}  // namespace relex::log
