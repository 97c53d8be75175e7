#pragma once

#include <compare>
#include <vector>

#include "pb/rational.hpp"

namespace pb {

// Weakly decreasing positive parts.
using Partition = std::vector<long>;

long partition_weight(const Partition& p);

// All partitions of N in reverse-lexicographic order, starting with (N).
std::vector<Partition> partitions_of(long N);

enum class Sector { NS, R };
enum class Tower { None, Plus, Minus };

// One monomial L_{-lambda} G_{-mu} |hw>. gmodes strictly decreasing, all positive,
// on Z+1/2 (NS) or Z>=1 (R). tower tags the R highest-weight vector.
struct BasisIndex {
    Partition partition;
    std::vector<Rational> gmodes;
    Tower tower = Tower::None;

    Rational level() const;
    auto operator<=>(const BasisIndex&) const = default;
};

// All basis monomials at the given level. NS: level in (1/2)Z>=0, no tower.
// R: level in Z>=0, each (lambda, mu) duplicated over tower in {+,-}.
// G_0 is deliberately excluded from R mode sets.
std::vector<BasisIndex> nsr_basis(Sector sector, const Rational& level);

// Product of hook lengths of the staircase partition (k, k-1, ..., 1).
mpz_class staircase_hook_product(long k);

// Product of hook lengths of an arbitrary partition.
mpz_class hook_product(const Partition& p);

}  // namespace pb
