// errors.hpp - exception types shared across the library
#pragma once

#include <stdexcept>
#include <string>

namespace hgpart {

// Bad input data or configuration (out-of-range ids, negative weights, ...).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed text input; carries the 1-based line number where parsing failed.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line_number)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + msg),
          line(line_number) {}
    int line;
};

// Internal cross-check mismatch (two independent routes disagree).
struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hgpart
