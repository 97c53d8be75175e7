#include "pb/virasoro.hpp"

#include <algorithm>
#include <stdexcept>

namespace pb {

namespace {

void add_to(VirState& s, const Partition& lam, const ExactScalar& v) {
    if (v.is_zero()) return;
    ExactScalar t = s[lam] + v;
    if (t.is_zero())
        s.erase(lam);
    else
        s[lam] = t;
}

}  // namespace

VirState VirasoroEngine::act_L_mono(long n, const Partition& lam) {
    auto key = std::make_pair(n, lam);
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;

    VirState out;
    if (lam.empty()) {
        if (n == 0)
            add_to(out, {}, p_.delta);
        else if (n < 0)
            add_to(out, {-n}, 1);
        // n > 0 annihilates the highest weight vector
    } else if (n < 0 && -n >= lam.front()) {
        Partition ext;
        ext.reserve(lam.size() + 1);
        ext.push_back(-n);
        ext.insert(ext.end(), lam.begin(), lam.end());
        add_to(out, ext, 1);
    } else {
        // L_n L_{-m} = L_{-m} L_n + (n+m) L_{n-m} + (c/12)(n^3-n) delta_{n,m}
        long m = lam.front();
        Partition rest(lam.begin() + 1, lam.end());
        VirState inner = act_L_mono(n, rest);
        for (const auto& [mu, v] : inner) {
            VirState lowered = act_L_mono(-m, mu);
            for (const auto& [nu, w] : lowered) add_to(out, nu, v * w);
        }
        VirState comm = act_L_mono(n - m, rest);
        ExactScalar f(n + m);
        for (const auto& [mu, v] : comm) add_to(out, mu, f * v);
        if (n == m) {
            ExactScalar central = p_.c * ExactScalar(make_rational(n * n * n - n, 12));
            add_to(out, rest, central);
        }
    }
    memo_[key] = out;
    return out;
}

VirState VirasoroEngine::act_L(long n, const VirState& s) {
    VirState out;
    for (const auto& [lam, v] : s) {
        VirState part = act_L_mono(n, lam);
        for (const auto& [mu, w] : part) add_to(out, mu, v * w);
    }
    return out;
}

ExactScalar VirasoroEngine::pairing(const Partition& lam, const Partition& mu) {
    VirState s;
    s[mu] = 1;
    // (L_{-l1}...L_{-lk})^+ = L_{lk}...L_{l1}: apply l1 first.
    for (long part : lam) {
        s = act_L(part, s);
        if (s.empty()) return {};
    }
    auto it = s.find({});
    return it == s.end() ? ExactScalar() : it->second;
}

Matrix VirasoroEngine::gram_matrix(long N) {
    auto basis = partitions_of(N);
    size_t d = basis.size();
    Matrix S(d, std::vector<ExactScalar>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i; j < d; ++j) S[i][j] = S[j][i] = pairing(basis[i], basis[j]);
    return S;
}

std::vector<ExactScalar> VirasoroEngine::whittaker_norms(long Nmax) {
    std::vector<ExactScalar> out;
    out.push_back(1);
    for (long N = 1; N <= Nmax; ++N) {
        auto basis = partitions_of(N);
        Matrix S = gram_matrix(N);
        size_t ones = 0;
        while (ones < basis.size() && basis[ones] != Partition(N, 1)) ++ones;
        std::vector<ExactScalar> rhs(basis.size());
        rhs[ones] = 1;
        auto sol = solve_linear(std::move(S), std::move(rhs));
        if (!sol)
            throw std::domain_error("degenerate weight (Kac line) at level " + std::to_string(N));
        out.push_back((*sol)[ones]);
    }
    return out;
}

const std::vector<ExactScalar>& whittaker_norms_cached(const ExactScalar& c, const ExactScalar& delta,
                                                       long Nmax) {
    static std::map<std::pair<ExactScalar, ExactScalar>, std::vector<ExactScalar>> cache;
    auto key = std::make_pair(c, delta);
    auto& entry = cache[key];
    if ((long)entry.size() < Nmax + 1) {
        VirasoroEngine eng({c, delta});
        entry = eng.whittaker_norms(Nmax);
    }
    return entry;
}

GradedSeries block_series(const ExactScalar& c, const Rational& delta, long order) {
    const auto& norms = whittaker_norms_cached(c, ExactScalar(delta), order);
    GradedSeries f(delta, Rational(order));
    for (long N = 0; N <= order; ++N) f.set(Rational(N), norms[N]);
    return f;
}

}  // namespace pb
