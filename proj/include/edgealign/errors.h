/**
 * @file errors.h
 * @brief Exception types thrown across the library.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace edgealign {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input bytes. Carries the byte offset where parsing failed.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : Error(msg + " (byte offset " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Input dimensions violate an operation's minimum-size contract.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Edge extraction kept zero points. Carries the largest gradient magnitude
/// observed so callers can pick workable thresholds.
class EmptyModelError : public Error {
public:
    explicit EmptyModelError(double max_magnitude)
        : Error("edge extraction produced an empty model (max gradient magnitude " +
                std::to_string(max_magnitude) + ")"),
          max_magnitude_(max_magnitude) {}
    EmptyModelError(const std::string& msg, double max_magnitude)
        : Error(msg), max_magnitude_(max_magnitude) {}
    double max_magnitude() const noexcept { return max_magnitude_; }

private:
    double max_magnitude_;
};

/// Index outside a grid or container range.
class BoundsError : public Error {
public:
    using Error::Error;
};

/// Requested computation exceeds a caller-supplied budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// Scene geometry cannot be realized on the requested canvas.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// Invalid parameter value.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace edgealign
