#include "log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace kac::log {
namespace {

std::mutex g_mutex;
Sink g_sink;
std::atomic<int> g_min_level{static_cast<int>(Level::Warn)};

const char* level_name(Level level) {
    switch (level) {
        case Level::Debug: return "debug";
        case Level::Info: return "info";
        case Level::Warn: return "warning";
        case Level::Error: return "error";
    }
    return "?";
}

}  // namespace

void set_sink(Sink sink) {
    std::lock_guard lock(g_mutex);
    g_sink = std::move(sink);
}

void set_min_level(Level level) { g_min_level.store(static_cast<int>(level)); }

bool enabled(Level level) { return static_cast<int>(level) >= g_min_level.load(); }

void write(Level level, const std::string& message) {
    if (!enabled(level)) return;
    std::lock_guard lock(g_mutex);
    if (g_sink) {
        g_sink(level, message);
    } else {
        std::cerr << "[" << level_name(level) << "] " << message << '\n';
    }
}

}  // namespace kac::log
