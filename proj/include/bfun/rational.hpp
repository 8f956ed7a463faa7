#pragma once

// Exact rational scalars backed by GMP. Everything downstream assumes
// arithmetic here never rounds.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bfun {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// falling factorial n(n-1)...(n-k+1)
inline Integer falling(long n, unsigned long k) {
    Integer r = 1;
    for (unsigned long i = 0; i < k; ++i) r *= Integer(n - long(i));
    return r;
}

inline Rational rat_pow(const Rational& q, unsigned long e) {
    Rational r = 1;
    Rational b = q;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Always prints with an explicit denominator, e.g. "3/1", "-2/5".
inline std::string rat_str(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    return q;
}

}  // namespace bfun
