#pragma once

#include <complex>
#include <iosfwd>
#include <string>

#include "pb/rational.hpp"

namespace pb {

// Element of the field Q(i, sqrt(2)), stored as a + b*i + c*sqrt(2) + d*i*sqrt(2)
// with rational components. This is the coefficient field for every exact
// computation in the library; values are immutable in spirit (all operations
// return new values).
class ExactScalar {
  public:
    ExactScalar() = default;
    ExactScalar(long v) : a_(v) {}  // NOLINT: implicit by design, mirrors numeric literals
    ExactScalar(const Rational& v) : a_(v) {}
    ExactScalar(Rational a, Rational b, Rational c, Rational d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

    static ExactScalar i() { return {0, 1, 0, 0}; }
    static ExactScalar sqrt2() { return {0, 0, 1, 0}; }

    const Rational& rat_part() const { return a_; }
    const Rational& i_part() const { return b_; }
    const Rational& sqrt2_part() const { return c_; }
    const Rational& i_sqrt2_part() const { return d_; }

    bool is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0; }
    bool is_rational() const { return b_ == 0 && c_ == 0 && d_ == 0; }

    // Throws unless the value is purely rational.
    const Rational& as_rational() const;

    ExactScalar operator-() const { return {-a_, -b_, -c_, -d_}; }
    ExactScalar operator+(const ExactScalar& o) const { return {a_ + o.a_, b_ + o.b_, c_ + o.c_, d_ + o.d_}; }
    ExactScalar operator-(const ExactScalar& o) const { return {a_ - o.a_, b_ - o.b_, c_ - o.c_, d_ - o.d_}; }
    ExactScalar operator*(const ExactScalar& o) const;
    ExactScalar operator/(const ExactScalar& o) const;

    ExactScalar& operator+=(const ExactScalar& o) { *this = *this + o; return *this; }
    ExactScalar& operator-=(const ExactScalar& o) { *this = *this - o; return *this; }
    ExactScalar& operator*=(const ExactScalar& o) { *this = *this * o; return *this; }
    ExactScalar& operator/=(const ExactScalar& o) { *this = *this / o; return *this; }

    bool operator==(const ExactScalar& o) const {
        return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
    }
    bool operator!=(const ExactScalar& o) const { return !(*this == o); }

    // Total order for use as map keys; not a numeric order.
    bool operator<(const ExactScalar& o) const;

    ExactScalar inverse() const;

    // Ring automorphism i -> -i.
    ExactScalar conj_i() const { return {a_, -b_, c_, -d_}; }
    // Ring automorphism sqrt(2) -> -sqrt(2).
    ExactScalar conj_sqrt2() const { return {a_, b_, -c_, -d_}; }

    // Integer power, negative allowed for nonzero values.
    ExactScalar pow(long k) const;

    std::complex<double> to_complex() const;

    // "a + b*I + c*R2 + d*I*R2" with zero parts omitted; parse() round-trips.
    std::string str() const;
    static ExactScalar parse(const std::string& s);

  private:
    Rational a_, b_, c_, d_;
};

// 2^e for e on the half-integer grid; anything else signals a bookkeeping bug
// in the caller's 2-power ledger and throws.
ExactScalar pow_two(const Rational& e);

std::ostream& operator<<(std::ostream& os, const ExactScalar& x);

}  // namespace pb
