#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace magsq {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: bad moduli, non-square order, out-of-domain parameters.
struct invalid_input : error {
    using error::error;
};

/// The requested object provably does not exist (side-2 squares, Kotzig
/// arrays outside their existence range, DDMOLS of side 2 or 3, ...).
struct nonexistence : error {
    using error::error;
};

/// A base construction that only covers specific parameters was asked for
/// something outside its range; callers should go through construct().
struct unsupported_base : invalid_input {
    using invalid_input::invalid_input;
};

/// Configured size/enumeration limit exceeded.
struct resource_limit : error {
    using error::error;
};

/// Arithmetic mixing elements of different group presentations.
struct mismatched_presentation : error {
    using error::error;
};

/// Internal assertion: a construction produced output that failed its
/// verifier gate. Indicates a bug, never expected on valid inputs.
struct construction_failure : error {
    using error::error;
};

/// Serialization parse failure; carries the 1-based text location.
struct parse_error : error {
    std::size_t row;
    std::size_t col;
    parse_error(const std::string& what, std::size_t row_, std::size_t col_)
        : error(what + " (row " + std::to_string(row_) + ", col " + std::to_string(col_) + ")"),
          row(row_), col(col_) {}
};

} // namespace magsq
