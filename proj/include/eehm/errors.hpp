#pragma once

#include <stdexcept>
#include <string>

namespace eehm {

// Thrown when an input file or operator string cannot be parsed.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an operator fails the logical-operator precondition.
struct not_logical_error : std::runtime_error {
    explicit not_logical_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an exhaustive search exceeds its configured cap.
struct resource_limit_error : std::runtime_error {
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace eehm
