#pragma once

#include "pb/nsr.hpp"
#include "pb/report.hpp"
#include "pb/virasoro.hpp"

namespace pb {

// Parameter pack of the Vir+Vir inside F+NSR embedding. Everything downstream
// is expressed through even powers and cross terms, so only rational invariants
// of b and P are stored; no square roots are ever taken.
struct EmbeddingParams {
    ExactScalar b;     // rational or purely imaginary, b^2 not in {0, 1}
    ExactScalar binv;
    ExactScalar P;
    ExactScalar bsq;   // rational
    ExactScalar Q;     // b + 1/b
    ExactScalar c_nsr; // 1 + 2Q^2

    ExactScalar b1sq;   // (b^(1))^2  = 2b^2/(1-b^2)
    ExactScalar b2isq;  // (b^(2))^-2 = 2/(b^2-1)
    ExactScalar q1sq;   // (b^(1) + 1/b^(1))^2
    ExactScalar q2sq;
    ExactScalar c1, c2;  // 1 + 6 q_eta^2
    ExactScalar beta1, beta2;
    ExactScalar p1sq;    // P^2/(2-2b^2)
    ExactScalar p2sq;    // P^2/(2-2b^-2)
    ExactScalar cross1;  // P b/(1-b^2) = P^(1) b^(1)
    ExactScalar cross2;  // -cross1     = P^(2) / b^(2)

    static EmbeddingParams create(const ExactScalar& b, const ExactScalar& P);

    // Ladder weight Delta^(eta)_n = q_eta^2/4 - (p_eta^2 + 2n cross_eta + n^2 b_eta^2).
    ExactScalar delta_n(int eta, const Rational& n) const;
    ExactScalar delta_ns() const;  // Q^2/8 - P^2/2
    ExactScalar delta_r() const;   // 1/16 + Q^2/8 - P^2/2

    NSRParams nsr(Sector s) const { return {c_nsr, P, s}; }
};

// Product over i,j >= 0, i+j < 2nu with the given parity; negative nu through
// the reflection rules. s_odd strips its 2^(1/8) prefactor: the caller accounts
// for it in the 2-power ledger.
ExactScalar s_even(const EmbeddingParams& p, const ExactScalar& x, long nu);
ExactScalar s_odd(const EmbeddingParams& p, const ExactScalar& x, const Rational& nu);

// Test hook: flips the sign of the n = 1/2 NS decomposition coefficient so the
// suite's mutation check can demonstrate a localized failure. Never set in
// normal operation.
void set_l2_sign_fault(bool on);

// Decomposition coefficients squared, with the beta^(-Delta) prefactors
// excluded by normalization (they cancel against the (beta z)^Delta leading
// powers of the blocks). All 2-powers are combined in one ledger exponent.
ExactScalar ln_squared_ns(const EmbeddingParams& p, const Rational& n);
ExactScalar ln_squared_r(const EmbeddingParams& p, const Rational& n);

// Sum over the n-window of l_n^2 D^k_{b,1/b}(F^(1)_n, F^(2)_n), as a series in
// z with base Delta^NS (NS) or Delta^R + 1/16 (R). window_max < 0 means auto
// (every n whose leading exponent is within the order).
GradedSeries fhat(const EmbeddingParams& p, Sector sector, long k, const ExactScalar& weight_offset,
                  bool sign_rule, long order, const Rational& window_max = Rational(-1));

Report verify_todablock(const EmbeddingParams& p, long order);
Report verify_okamoto_r(const EmbeddingParams& p, long order, const Rational& window_max = Rational(-1));
Report verify_hatf(const EmbeddingParams& p, Sector sector, long order);

}  // namespace pb
