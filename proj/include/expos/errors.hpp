#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace expos {

// Thrown when a textual set/family spec does not match the grammar.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t position)
        : std::runtime_error("parse error at position " + std::to_string(position) +
                             ": " + message),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Thrown when an operation is called outside its stated domain
// (wrong branch, out-of-range argument, non-squarefree modulus, ...).
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& message)
        : std::invalid_argument(message) {}
};

// Thrown when a request would exceed the configured sieve memory cap.
class ResourceCapError : public std::runtime_error {
public:
    explicit ResourceCapError(const std::string& message)
        : std::runtime_error(message) {}
};

}  // namespace expos
