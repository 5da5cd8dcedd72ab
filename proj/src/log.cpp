#include "so/log.hpp"

#include "so/errors.hpp"

namespace so::log {

namespace {
Level g_threshold = Level::warn;

const char* prefix(Level level) {
    switch (level) {
        case Level::error: return "error: ";
        case Level::warn: return "warning: ";
        case Level::info: return "info: ";
        case Level::debug: return "debug: ";
    }
    return "";
}
}  // namespace

Level threshold() { return g_threshold; }

void set_threshold(Level level) { g_threshold = level; }

Level parse_level(const std::string& name) {
    if (name == "error") return Level::error;
    if (name == "warn") return Level::warn;
    if (name == "info") return Level::info;
    if (name == "debug") return Level::debug;
    throw ValidationError("unknown log level: " + name);
}

namespace detail {
void emit(Level level, const std::string& msg) {
    std::cerr << prefix(level) << msg << '\n';
}
}  // namespace detail

}  // namespace so::log
