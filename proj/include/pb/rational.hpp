#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace pb {

// Arbitrary-precision rational, always canonical (reduced, positive denominator).
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Floor of a rational as an integer rational.
inline Rational rat_floor(const Rational& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return Rational(q);
}

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

// True iff x lies on the half-integer grid (1/2)Z.
inline bool is_half_integer_grid(const Rational& x) {
    Rational two_x = 2 * x;
    return is_integer(two_x);
}

inline long to_long(const Rational& x) {
    if (!is_integer(x)) throw std::invalid_argument("rational is not an integer: " + x.get_str());
    if (!x.get_num().fits_slong_p()) throw std::overflow_error("rational exceeds long range");
    return x.get_num().get_si();
}

// x^k for integer k (negative allowed, x != 0 then).
inline Rational rat_pow(const Rational& x, long k) {
    if (k == 0) return Rational(1);
    bool neg = k < 0;
    unsigned long e = neg ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), e);
    if (neg) {
        if (num == 0) throw std::domain_error("zero raised to a negative power");
        std::swap(num, den);
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p" or "p/q"; rejects anything else.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    for (char ch : s)
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-' || ch == '+'))
            throw std::invalid_argument("malformed rational: " + s);
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& x) { return x.get_str(); }

inline double to_double(const Rational& x) { return x.get_d(); }

}  // namespace pb
