// Checked 128-bit integer arithmetic for the metric closed forms.
// Metric values are exact non-negative integers; overflowing 128 bits is a
// defect (the parser caps inputs well below that), so checked ops abort via
// overflow_error instead of returning an error path.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nncost {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u128 add_u128(u128 a, u128 b) {
    u128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("128-bit overflow in metric arithmetic");
    return r;
}

inline u128 mul_u128(u128 a, u128 b) {
    u128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("128-bit overflow in metric arithmetic");
    return r;
}

inline u128 sub_u128(u128 a, u128 b) {
    if (b > a)
        throw std::underflow_error("negative value in metric arithmetic");
    return a - b;
}

std::string to_string_u128(u128 v);
std::string to_string_i128(i128 v);

// Smallest k with 2^k >= n, i.e. ceil(log2 n); n must be >= 1.
inline u64 ceil_log2(u64 n) {
    if (n == 0)
        throw std::invalid_argument("ceil_log2(0)");
    u64 bits = 0;
    for (u64 v = n - 1; v != 0; v >>= 1)
        ++bits;
    return bits;
}

// Exact non-negative rational with a power-of-ten denominator, as parsed from
// decimal fractions in model files (s_p, mu). Normalized on construction.
struct Dec {
    u128 num = 0;
    u128 den = 1;

    Dec() = default;
    Dec(u128 n, u128 d);

    bool operator==(const Dec& o) const { return num == o.num && den == o.den; }
    bool is_integer() const { return den == 1; }

    // Decimal rendering without trailing zeros ("0.5", "1", "0.37").
    std::string str() const;
};

// value + frac.num/frac.den * scale, rounded half up. Everything checked.
u128 round_half_up(u128 value, const Dec& frac, u128 scale);

// Round half up of a bare ratio p/q (q > 0).
u128 round_ratio_half_up(u128 p, u128 q);

} // namespace nncost
