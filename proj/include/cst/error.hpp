#pragma once

#include <stdexcept>
#include <string>

namespace cst {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (grammar files, word files). Carries a 1-based position.
struct ParseError : Error {
    int line = 0;
    int col = 0;
    ParseError(const std::string& msg, int line_, int col_)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
};

// A construction exceeded its configured resource budget (word caps, state caps).
struct BudgetError : Error {
    explicit BudgetError(const std::string& msg) : Error("resource budget exceeded: " + msg) {}
};

// A precondition on an operation's input was violated (wrong normal form, bad order).
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

} // namespace cst
