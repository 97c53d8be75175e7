#pragma once

#include "pb/blowup.hpp"
#include "pb/report.hpp"
#include "pb/virasoro.hpp"

namespace pb {

// C(sigma+n)/C(sigma) as a rational number, 2n in Z. Finite products only;
// requires 2*sigma off the integers (resonance).
Rational c_ratio(const Rational& sigma, const Rational& n);

// Expansion sum_n ctilde(sigma,n) stilde^n F((sigma+n)^2 | z) over integer n,
// with c = 1 blocks. Normalization is pinned: coefficient 1 at z^{sigma^2}.
struct TauSeries {
    Rational sigma;
    Rational stilde;
    std::vector<long> window;               // shifts n included in the sum
    std::map<long, GradedSeries> per_n;     // block at (sigma+n)^2, scaled
    ExponentKeyedSum combined{Rational(0)};
};

TauSeries tau_series(const Rational& sigma, const Rational& stilde, long order);

// The Backlund partner: the expansion at (1/2 - sigma, 1/((2s)^2(1-2s)^2 st)),
// realized at sigma - 1/2 with the reciprocal weight via the negation symmetry.
TauSeries tau_half_series(const Rational& sigma, const Rational& stilde, long order);

// Bilinear fourth-order form of the equation, one residual sum per power m.
// window < 0 picks the sufficient window automatically; an explicit window that
// is too small for the order is refused.
Report verify_tau3(const Rational& sigma, long order, const std::vector<long>& m_range,
                   long window = -1);

// Differential-difference identities, coefficients on the m = 0, 1 (Toda) and
// the single half-shifted (Okamoto) power.
Report verify_toda_c1(const Rational& sigma, long order);
Report verify_okamoto_c1(const Rational& sigma, long order);

// Coefficients of the algebraic-solution expansion.
Rational b_coeff(long n);

// sum_n (sign)^n b_coeff(n) F((1/4+n)^2|z) == z^{1/16} e^{4*sign*sqrt z},
// sign = +-1, checked on the half-integer grid through the given order.
Report verify_blockquarter(int sign, long order);

// b_coeff(n) against the squared staircase hook-length count.
Report verify_hook_bn(long n_max);

// Euler-primed logarithmic derivatives of the pair multiply to z exactly.
Report verify_backlund_profd(const Rational& sigma, const Rational& stilde, long order);

// ctilde(s,n) ctilde(s,-n) against the rescaled NS decomposition coefficient
// at b = i, P = 2i*sigma, for 2n = 1..two_n_max.
Report verify_bridge(const Rational& sigma, long two_n_max);

}  // namespace pb
