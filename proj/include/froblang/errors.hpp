#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace froblang {

/// Malformed text input. `position` is a 0-based character offset.
class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::invalid_argument(what + " (at position " + std::to_string(position) + ")"),
          detail_(what), position_(position) {}

    std::size_t position() const { return position_; }
    /// Message without the position suffix.
    const std::string& detail() const { return detail_; }

private:
    std::string detail_;
    std::size_t position_;
};

/// Operation called outside its preconditions (alphabet mismatch, rational slope, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Exact integer arithmetic would exceed the supported width.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// A factor or Parikh set did not stabilize before the configured cap.
class StabilizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace froblang
