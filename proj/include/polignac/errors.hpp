#pragma once

#include <stdexcept>
#include <string>

namespace polignac {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration or precondition violation (bad limit, k = 0, ...).
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

// Generator spec rejected: non-ascending list, ratio < 2, bound < 2, or a
// spec string the mini-language parser cannot read.
struct SpecError : Error {
    explicit SpecError(const std::string& what) : Error(what) {}
};

// 64-bit arithmetic would wrap. Detected, never silently wrapped.
struct OverflowError : Error {
    explicit OverflowError(const std::string& what) : Error(what) {}
};

// A lazy stream ended (or a pull budget was hit) before enough elements
// were found. The finite-data analogue of an infinite-set hypothesis failing.
struct SourceExhausted : Error {
    explicit SourceExhausted(const std::string& what) : Error(what) {}
};

// Exhaustive verification asked for more colorings than the configured cap.
struct TooLarge : Error {
    explicit TooLarge(const std::string& what) : Error(what) {}
};

// Census cache file has the wrong version token or cannot be parsed.
struct CacheError : Error {
    explicit CacheError(const std::string& what) : Error(what) {}
};

// Sieve asked to run with an invalid allocation budget (segment size 0).
struct AllocationBudgetExceeded : Error {
    explicit AllocationBudgetExceeded(const std::string& what) : Error(what) {}
};

} // namespace polignac
