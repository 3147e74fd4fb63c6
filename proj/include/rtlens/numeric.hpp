#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rtlens/errors.hpp"

namespace rtlens {

using BigInt = mpz_class;
using Rational = mpq_class;

static_assert(sizeof(long) >= sizeof(long long), "conversion below assumes LP64");

inline BigInt to_big(long long v) { return BigInt(static_cast<long>(v)); }

inline Rational to_rat(long long num, long long den = 1) {
    Rational r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

/// Floor residue in [0, m) for m > 0.
inline long long mod_floor(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

/// Extended gcd: returns g = gcd(a, b) and x, y with a*x + b*y = g.
inline long long ext_gcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    long long x1 = 0, y1 = 0;
    long long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
inline long long inv_mod(long long a, long long m) {
    long long x = 0, y = 0;
    long long g = ext_gcd(mod_floor(a, m), m, x, y);
    if (g != 1 && g != -1)
        throw Error("inv_mod: " + std::to_string(a) + " not invertible mod " + std::to_string(m));
    return mod_floor(x, m);
}

inline long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// Prime-power factorization by trial division (orders here are tiny).
inline std::vector<std::pair<long long, int>> factorize(long long n) {
    std::vector<std::pair<long long, int>> out;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline long long pow_ll(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

/// N^r capped against a budget; returns N^r or -1 when it exceeds the cap.
inline long long pow_checked(long long base, int exp, long long cap) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > cap / base) return -1;
        r *= base;
    }
    return r;
}

inline BigInt bigint_pow(const BigInt& base, unsigned long e) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

/// Renders a rational in lowest terms as "p" (integral) or "p/q".
inline std::string rational_to_string(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

/// Parses "p" or "p/q" back into a canonical rational.
inline Rational rational_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw Error("rational_from_string: cannot parse '" + s + "'");
    r.canonicalize();
    return r;
}

} // namespace rtlens
