#include "pb/combinatorics.hpp"

#include <numeric>
#include <stdexcept>

namespace pb {

long partition_weight(const Partition& p) {
    return std::accumulate(p.begin(), p.end(), 0L);
}

namespace {

void gen_partitions(long remaining, long max_part, Partition& cur, std::vector<Partition>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (long part = std::min(remaining, max_part); part >= 1; --part) {
        cur.push_back(part);
        gen_partitions(remaining - part, part, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_of(long N) {
    if (N < 0) throw std::invalid_argument("negative partition weight");
    std::vector<Partition> out;
    Partition cur;
    gen_partitions(N, N, cur, out);
    if (N == 0) out.assign(1, {});
    return out;
}

Rational BasisIndex::level() const {
    Rational lv(partition_weight(partition));
    for (const auto& m : gmodes) lv += m;
    return lv;
}

namespace {

// Strict mode sets with weight exactly `target`, modes taken from `pool` (descending).
void gen_modesets(const std::vector<Rational>& pool, size_t from, const Rational& target,
                  std::vector<Rational>& cur, std::vector<std::vector<Rational>>& out) {
    if (target == 0) {
        out.push_back(cur);
        return;
    }
    for (size_t k = from; k < pool.size(); ++k) {
        if (pool[k] > target) continue;
        cur.push_back(pool[k]);
        gen_modesets(pool, k + 1, target - pool[k], cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<BasisIndex> nsr_basis(Sector sector, const Rational& level) {
    if (level < 0) throw std::invalid_argument("negative level");
    if (sector == Sector::NS) {
        if (!is_half_integer_grid(level))
            throw std::invalid_argument("NS level must lie on (1/2)Z: " + to_string(level));
    } else {
        if (!is_integer(level))
            throw std::invalid_argument("R level must be an integer: " + to_string(level));
    }

    // Candidate G modes, descending, weight-bounded by the level.
    std::vector<Rational> pool;
    Rational m = (sector == Sector::NS) ? make_rational(1, 2) : Rational(1);
    std::vector<Rational> asc;
    for (; m <= level; m += 1) asc.push_back(m);
    pool.assign(asc.rbegin(), asc.rend());

    std::vector<BasisIndex> out;
    std::vector<std::vector<Rational>> modesets;
    std::vector<Rational> cur;
    // Enumerate by G-weight: for each mode set, fill the rest with a partition.
    for (Rational gw = 0; gw <= level; gw += (sector == Sector::NS ? make_rational(1, 2) : Rational(1))) {
        Rational rest = level - gw;
        if (!is_integer(rest)) continue;
        modesets.clear();
        gen_modesets(pool, 0, gw, cur, modesets);
        auto parts = partitions_of(to_long(rest));
        for (const auto& mu : modesets) {
            for (const auto& lam : parts) {
                if (sector == Sector::NS) {
                    out.push_back({lam, mu, Tower::None});
                } else {
                    out.push_back({lam, mu, Tower::Plus});
                    out.push_back({lam, mu, Tower::Minus});
                }
            }
        }
    }
    return out;
}

mpz_class hook_product(const Partition& p) {
    mpz_class prod(1);
    // Arm + leg + 1 per cell; conjugate column lengths computed directly.
    for (size_t r = 0; r < p.size(); ++r) {
        for (long c = 0; c < p[r]; ++c) {
            long arm = p[r] - c - 1;
            long leg = 0;
            for (size_t r2 = r + 1; r2 < p.size(); ++r2)
                if (p[r2] > c) ++leg;
            prod *= arm + leg + 1;
        }
    }
    return prod;
}

mpz_class staircase_hook_product(long k) {
    if (k < 0) throw std::invalid_argument("negative staircase size");
    Partition p;
    for (long v = k; v >= 1; --v) p.push_back(v);
    return hook_product(p);
}

}  // namespace pb
