#pragma once

#include <cstdint>

#include "kzero/errors.hpp"

namespace kzero::detail {

// All integer arithmetic on unbounded payloads (the ring Z and lifts into it)
// goes through these. Overflow is a resource condition, not silent wraparound.

inline std::int64_t add_i64(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ResourceError("integer overflow in exact arithmetic");
    return r;
}

inline std::int64_t sub_i64(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw ResourceError("integer overflow in exact arithmetic");
    return r;
}

inline std::int64_t mul_i64(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("integer overflow in exact arithmetic");
    return r;
}

inline std::int64_t neg_i64(std::int64_t a) { return sub_i64(0, a); }

// Floor-free Euclidean division: remainder in [0, |b|).
inline void divmod_i64(std::int64_t a, std::int64_t b, std::int64_t& q, std::int64_t& r) {
    if (b == 0) throw UsageError("division by zero");
    q = a / b;
    r = a % b;
    if (r < 0) {
        r += (b > 0 ? b : -b);
        q += (b > 0 ? -1 : 1);
    }
}

} // namespace kzero::detail
