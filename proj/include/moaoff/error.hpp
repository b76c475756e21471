#pragma once

#include <stdexcept>
#include <string>

namespace moaoff {

// Invalid inputs or configuration (CLI exit code 1).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unreadable or malformed files (CLI exit code 2).
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : IoError {
    explicit ParseError(const std::string& msg) : IoError(msg) {}
};

} // namespace moaoff
