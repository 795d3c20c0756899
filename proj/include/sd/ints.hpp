#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace sd {

using Int = boost::multiprecision::cpp_int;

inline int sgn(const Int& x) { return x.sign(); }

/// Extended gcd: g = gcd(a,b) >= 0 with g = x*a + y*b.
struct Egcd {
    Int g, x, y;
};

inline Egcd egcd(Int a, Int b) {
    Int old_r = a, r = b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    return {old_r, old_s, old_t};
}

}  // namespace sd
