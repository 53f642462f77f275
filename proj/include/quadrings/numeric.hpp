#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace quadrings {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

/** Floor division; cpp_int's built-in / truncates toward zero. */
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

/** Representative of a mod n in [0, n); requires n > 0. */
inline Int floor_mod(const Int& a, const Int& n) {
    Int r = a % n;
    if (r < 0) r += n;
    return r;
}

/** Extended gcd: returns g = gcd(a, b) >= 0 and x, y with a*x + b*y = g. */
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    Int old_r = a, r = b;
    Int old_x = 1, cx = 0;
    Int old_y = 0, cy = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int t = old_r - q * r; old_r = r; r = t;
        t = old_x - q * cx; old_x = cx; cx = t;
        t = old_y - q * cy; old_y = cy; cy = t;
    }
    if (old_r < 0) { old_r = -old_r; old_x = -old_x; old_y = -old_y; }
    x = old_x;
    y = old_y;
    return old_r;
}

/** Floor of the square root of n >= 0. */
inline Int isqrt(const Int& n) {
    return boost::multiprecision::sqrt(n);
}

/** True if n = p^k for a prime p and k >= 1.  Trial division; meant for small n. */
inline bool is_prime_power(Int n) {
    if (n < 2) return false;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            return n == 1;
        }
    }
    return true; // prime
}

} // namespace quadrings
