#pragma once

#include <stdexcept>
#include <string>

namespace pfaff {

// Raised when an input string does not conform to the element or spec-file grammar.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Raised when a mathematically well-formed request cannot be satisfied (division by
// zero, square root of a nonsquare where a root is required, unsupported field).
class field_error : public std::runtime_error {
public:
    explicit field_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when structural validation fails: mismatched fields, wrong dimensions,
// maps that are not involutions, tables that are not associative.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace pfaff
