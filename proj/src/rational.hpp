#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zetakit {

// Exact arbitrary-precision rational. GMP keeps values canonical
// (gcd 1, positive denominator) as long as construction goes through
// make_rational or arithmetic on canonical operands.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rational_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("rational: cannot parse '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

// r^e for integer e >= 0.
inline Rational rational_pow(const Rational& r, unsigned long e) {
    Rational out(1);
    Rational base = r;
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

// 1/m^k for m >= 1, k >= 1; the building block of every truncated sum.
inline Rational inv_pow(unsigned long m, unsigned long k) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), m, k);
    Rational r(1, den);
    return r;
}

// binomial(a, b) with the convention that out-of-range b gives 0.
inline Rational binomial(long a, long b) {
    if (b < 0 || b > a) return Rational(0);
    mpz_class z;
    mpz_bin_uiui(z.get_mpz_t(), static_cast<unsigned long>(a),
                 static_cast<unsigned long>(b));
    return Rational(z);
}

}  // namespace zetakit
