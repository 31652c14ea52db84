#include "core/wideint.hpp"

#include <algorithm>

namespace nncost {

std::string to_string_u128(u128 v) {
    if (v == 0)
        return "0";
    std::string s;
    while (v != 0) {
        s.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

std::string to_string_i128(i128 v) {
    if (v < 0)
        return "-" + to_string_u128(u128(-v));
    return to_string_u128(u128(v));
}

static u128 gcd_u128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Dec::Dec(u128 n, u128 d) : num(n), den(d) {
    if (den == 0)
        throw std::invalid_argument("zero denominator");
    u128 g = gcd_u128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num == 0)
        den = 1;
}

std::string Dec::str() const {
    if (den == 1)
        return to_string_u128(num);
    u128 ipart = num / den;
    // Long division for the fractional digits; terminates because den only
    // has factors 2 and 5 (it came from a decimal literal).
    std::string frac;
    u128 r = num % den;
    while (r != 0) {
        if (frac.size() > 64)
            throw std::invalid_argument("non-decimal denominator");
        r = mul_u128(r, 10);
        frac.push_back(char('0' + int(r / den)));
        r %= den;
    }
    return to_string_u128(ipart) + "." + frac;
}

u128 round_half_up(u128 value, const Dec& frac, u128 scale) {
    // value + frac*scale = value + num*scale/den; round half up:
    // floor((2*num*scale + den) / (2*den))
    u128 p = mul_u128(frac.num, scale);
    u128 twice = add_u128(mul_u128(p, 2), frac.den);
    return add_u128(value, twice / mul_u128(frac.den, 2));
}

u128 round_ratio_half_up(u128 p, u128 q) {
    if (q == 0)
        throw std::invalid_argument("zero denominator");
    return add_u128(mul_u128(p, 2), q) / mul_u128(q, 2);
}

} // namespace nncost
