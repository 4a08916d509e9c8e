#pragma once

#include <stdexcept>
#include <string>

namespace edpc {

/// Input text that could not be parsed. `line()` is 1-based, 0 when unknown.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Structurally valid input that violates a domain contract or parameter range.
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace edpc
