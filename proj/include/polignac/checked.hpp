#pragma once

#include <cstdint>

#include "polignac/errors.hpp"

namespace polignac {

inline uint64_t checked_add(uint64_t a, uint64_t b) {
    uint64_t r = 0;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("64-bit addition overflow");
    return r;
}

inline uint64_t checked_mul(uint64_t a, uint64_t b) {
    uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("64-bit multiplication overflow");
    return r;
}

} // namespace polignac
