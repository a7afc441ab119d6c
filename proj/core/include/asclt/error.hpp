#pragma once

#include <stdexcept>
#include <string>

namespace asclt {

// Bad arguments supplied by the caller (maps to CLI exit status 2).
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Index past the end of a finite table (Custom weights).
class OutOfRangeError : public std::out_of_range {
public:
    explicit OutOfRangeError(const std::string& what) : std::out_of_range(what) {}
};

// Two computation routes that must agree did not.
class ConsistencyError : public std::logic_error {
public:
    explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

// Requested combination is outside what the library implements.
class UnsupportedError : public std::runtime_error {
public:
    explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool condition, const std::string& message) {
    if (!condition) throw UsageError(message);
}

}  // namespace asclt
