#pragma once

#include <map>
#include <vector>

#include "pb/combinatorics.hpp"
#include "pb/linalg.hpp"
#include "pb/series.hpp"

namespace pb {

// Super-Virasoro highest weight data. delta() follows the parametrization
// Delta = (1-2d)/16 + (Q^2/4 - P^2)/2 with c = 1 + 2Q^2, d = 1/2 (NS), 0 (R).
struct NSRParams {
    ExactScalar c;  // NSR-normalized central charge
    ExactScalar P;
    Sector sector = Sector::NS;

    // Q^2/4 expressed through c; avoids extracting Q itself.
    ExactScalar q_sq_quarter() const { return (c - ExactScalar(1)) / ExactScalar(8); }
    ExactScalar delta() const;
};

using NSRState = std::map<BasisIndex, ExactScalar>;

class NSREngine {
  public:
    explicit NSREngine(NSRParams p);

    const NSRParams& params() const { return p_; }

    NSRState act_L(const Rational& n, const NSRState& s);
    NSRState act_G(const Rational& r, const NSRState& s);

    // Shapovalov pairing; complex-bilinear, L_n^+ = L_{-n}, G_r^+ = G_{-r}.
    ExactScalar pairing(const BasisIndex& u, const BasisIndex& v);

    Matrix gram_matrix(const Rational& level);

    // <u, |N>> for each basis monomial u at the level, from the raise-and-reduce
    // rules. `sign` selects the R tower the Whittaker vector starts from.
    std::vector<ExactScalar> whittaker_pairing_vector(Tower sign, const Rational& level);

    // <N|N> per level step; NS steps 1/2, R steps 1.
    std::vector<ExactScalar> whittaker_norms(Tower sign, const Rational& max_level);

    // R sector only: <N_-|G_0|N_+> per integer level. The leading entry is the
    // zero-mode matrix element -(iP/sqrt2); the higher ones are not
    // proportional to the diagonal norms.
    std::vector<ExactScalar> whittaker_cross_pairings(const Rational& max_level);

  private:
    NSRState act_op(bool is_g, const Rational& mode, const NSRState& s);
    NSRState act_op_mono(bool is_g, const Rational& mode, const BasisIndex& ix);

    NSRParams p_;
    std::map<std::tuple<bool, Rational, BasisIndex>, NSRState> memo_;
};

// z^Delta sum <N|N> z^N; requires rational Delta. Cached per (c, P, sector).
GradedSeries nsr_block_series(const NSRParams& p, const Rational& order);

const std::vector<ExactScalar>& nsr_norms_cached(const NSRParams& p, const Rational& max_level);

}  // namespace pb
