#pragma once

#include <map>
#include <vector>

#include "pb/combinatorics.hpp"
#include "pb/linalg.hpp"
#include "pb/series.hpp"

namespace pb {

struct VirasoroParams {
    ExactScalar c;
    ExactScalar delta;
};

// Linear combination of monomials L_{-lambda}|Delta>.
using VirState = std::map<Partition, ExactScalar>;

// Verma-module computations for one (c, Delta). Memoizes the recursive
// commutator expansion, so keep an engine alive across related queries.
class VirasoroEngine {
  public:
    explicit VirasoroEngine(VirasoroParams p) : p_(std::move(p)) {}

    const VirasoroParams& params() const { return p_; }

    // Action of L_n (any sign) on a state.
    VirState act_L(long n, const VirState& s);

    // Shapovalov pairing <L_{-lam} hw, L_{-mu} hw>.
    ExactScalar pairing(const Partition& lam, const Partition& mu);

    // Gram matrix at level N in partitions_of(N) order.
    Matrix gram_matrix(long N);

    // Whittaker norms a_0..a_Nmax; a_N = (S_N^-1) at the (1^N,1^N) entry.
    // Throws on a singular Gram matrix, naming the level.
    std::vector<ExactScalar> whittaker_norms(long Nmax);

  private:
    VirState act_L_mono(long n, const Partition& lam);

    VirasoroParams p_;
    std::map<std::pair<long, Partition>, VirState> memo_;
};

// Cached Whittaker norms keyed by (c, delta); grows the cached prefix on demand.
const std::vector<ExactScalar>& whittaker_norms_cached(const ExactScalar& c, const ExactScalar& delta,
                                                       long Nmax);

// z^Delta sum_N a_N z^N. Requires a rational Delta (the series base is rational).
GradedSeries block_series(const ExactScalar& c, const Rational& delta, long order);

}  // namespace pb
