#pragma once

#include <iostream>
#include <sstream>
#include <string>

namespace so::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

Level threshold();
void set_threshold(Level level);
Level parse_level(const std::string& name);

namespace detail {
void emit(Level level, const std::string& msg);

template <typename... Args>
void write(Level level, Args&&... args) {
    if (level > threshold()) return;
    std::ostringstream oss;
    (oss << ... << args);
    emit(level, oss.str());
}
}  // namespace detail

template <typename... Args>
void error(Args&&... args) { detail::write(Level::error, std::forward<Args>(args)...); }
template <typename... Args>
void warn(Args&&... args) { detail::write(Level::warn, std::forward<Args>(args)...); }
template <typename... Args>
void info(Args&&... args) { detail::write(Level::info, std::forward<Args>(args)...); }
template <typename... Args>
void debug(Args&&... args) { detail::write(Level::debug, std::forward<Args>(args)...); }

}  // namespace so::log
