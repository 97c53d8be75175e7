#include "pb/nsr.hpp"

#include <stdexcept>

namespace pb {

ExactScalar NSRParams::delta() const {
    ExactScalar base = (sector == Sector::R) ? ExactScalar(make_rational(1, 16)) : ExactScalar(0);
    return base + (q_sq_quarter() - P * P) / ExactScalar(2);
}

namespace {

void add_to(NSRState& s, const BasisIndex& ix, const ExactScalar& v) {
    if (v.is_zero()) return;
    ExactScalar t = s[ix] + v;
    if (t.is_zero())
        s.erase(ix);
    else
        s[ix] = t;
}

ExactScalar half_central_l(const ExactScalar& c, const Rational& n) {
    // (c/8)(n^3 - n)
    return c * ExactScalar((n * n * n - n) / 8);
}

}  // namespace

namespace {

// Reduction factors of the raising rules on |N>. The NS L_1 factor is the
// square of the primitive G_{1/2} factor (L_1 = G_{1/2}^2 on the Whittaker
// vector), kept as an explicit product so the derivation stays visible.
const ExactScalar kNsGHalf(1);
const ExactScalar kNsL1 = kNsGHalf * kNsGHalf;
const ExactScalar kRL1(make_rational(1, 2));

}  // namespace

NSREngine::NSREngine(NSRParams p) : p_(std::move(p)) {}

NSRState NSREngine::act_op_mono(bool is_g, const Rational& mode, const BasisIndex& ix) {
    if (is_g) {
        Rational grid = mode + ((p_.sector == Sector::NS) ? make_rational(1, 2) : Rational(0));
        if (!is_integer(grid)) throw std::invalid_argument("G mode off the sector grid: " + to_string(mode));
    }
    auto key = std::make_tuple(is_g, mode, ix);
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;

    NSRState out;
    if (ix.partition.empty() && ix.gmodes.empty()) {
        // highest weight vector
        if (!is_g) {
            if (mode == 0)
                add_to(out, ix, p_.delta());
            else if (mode < 0) {
                BasisIndex nx = ix;
                nx.partition.push_back(to_long(-mode));
                add_to(out, nx, 1);
            }
        } else {
            if (mode == 0) {
                if (p_.sector != Sector::R) throw std::logic_error("G_0 outside the R sector");
                BasisIndex nx = ix;
                nx.tower = (ix.tower == Tower::Plus) ? Tower::Minus : Tower::Plus;
                // G_0 |hw,±> = -(iP/sqrt2)|hw,∓>
                add_to(out, nx, -(ExactScalar::i() * p_.P / ExactScalar::sqrt2()));
            } else if (mode < 0) {
                BasisIndex nx = ix;
                nx.gmodes.push_back(-mode);
                add_to(out, nx, 1);
            }
        }
    } else if (!is_g && mode < 0 && (ix.partition.empty() || -mode >= Rational(ix.partition.front()))) {
        BasisIndex nx = ix;
        nx.partition.insert(nx.partition.begin(), to_long(-mode));
        add_to(out, nx, 1);
    } else if (is_g && mode < 0 && ix.partition.empty() &&
               (ix.gmodes.empty() || -mode > ix.gmodes.front())) {
        BasisIndex nx = ix;
        nx.gmodes.insert(nx.gmodes.begin(), -mode);
        add_to(out, nx, 1);
    } else if (is_g && mode < 0 && ix.partition.empty() && -mode == ix.gmodes.front()) {
        // G_{-s} G_{-s} = L_{-2s}: reduce directly instead of anticommuting in place
        BasisIndex rest = ix;
        rest.gmodes.erase(rest.gmodes.begin());
        out = act_op_mono(false, 2 * mode, rest);
    } else if (!ix.partition.empty()) {
        // leading factor L_{-a}
        Rational a(ix.partition.front());
        BasisIndex rest = ix;
        rest.partition.erase(rest.partition.begin());
        if (!is_g) {
            // L_m L_{-a} = L_{-a} L_m + (m+a) L_{m-a} + (c/8)(m^3-m) delta_{m,a}
            NSRState inner = act_op_mono(false, mode, rest);
            out = act_op(false, -a, inner);
            NSRState comm = act_op_mono(false, mode - a, rest);
            ExactScalar f(mode + a);
            for (const auto& [nx, v] : comm) add_to(out, nx, f * v);
            if (mode == a) add_to(out, rest, half_central_l(p_.c, mode));
        } else {
            // G_m L_{-a} = L_{-a} G_m + (a/2 + m) G_{m-a}
            NSRState inner = act_op_mono(true, mode, rest);
            out = act_op(false, -a, inner);
            NSRState comm = act_op_mono(true, mode - a, rest);
            ExactScalar f(a / 2 + mode);
            for (const auto& [nx, v] : comm) add_to(out, nx, f * v);
        }
    } else {
        // leading factor G_{-s}
        Rational s = ix.gmodes.front();
        BasisIndex rest = ix;
        rest.gmodes.erase(rest.gmodes.begin());
        if (!is_g) {
            // L_m G_{-s} = G_{-s} L_m + (m/2 + s) G_{m-s}
            NSRState inner = act_op_mono(false, mode, rest);
            out = act_op(true, -s, inner);
            NSRState comm = act_op_mono(true, mode - s, rest);
            ExactScalar f(mode / 2 + s);
            for (const auto& [nx, v] : comm) add_to(out, nx, f * v);
        } else {
            // G_m G_{-s} = -G_{-s} G_m + 2 L_{m-s} + (c/2)(m^2 - 1/4) delta_{m,s}
            NSRState inner = act_op_mono(true, mode, rest);
            NSRState prod = act_op(true, -s, inner);
            for (const auto& [nx, v] : prod) add_to(out, nx, -v);
            NSRState comm = act_op_mono(false, mode - s, rest);
            for (const auto& [nx, v] : comm) add_to(out, nx, ExactScalar(2) * v);
            if (mode == s)
                add_to(out, rest, p_.c * ExactScalar(mode * mode - make_rational(1, 4)) / ExactScalar(2));
        }
    }
    memo_[key] = out;
    return out;
}

NSRState NSREngine::act_op(bool is_g, const Rational& mode, const NSRState& s) {
    NSRState out;
    for (const auto& [ix, v] : s) {
        NSRState part = act_op_mono(is_g, mode, ix);
        for (const auto& [nx, w] : part) add_to(out, nx, v * w);
    }
    return out;
}

NSRState NSREngine::act_L(const Rational& n, const NSRState& s) { return act_op(false, n, s); }
NSRState NSREngine::act_G(const Rational& r, const NSRState& s) { return act_op(true, r, s); }

ExactScalar NSREngine::pairing(const BasisIndex& u, const BasisIndex& v) {
    NSRState s;
    s[v] = 1;
    // (L_{-l1}..L_{-lk} G_{-m1}..G_{-mj})^+ applied right to left.
    for (long part : u.partition) {
        s = act_op(false, part, s);
        if (s.empty()) return {};
    }
    for (const Rational& m : u.gmodes) {
        s = act_op(true, m, s);
        if (s.empty()) return {};
    }
    BasisIndex hw;
    hw.tower = u.tower;
    auto it = s.find(hw);
    return it == s.end() ? ExactScalar() : it->second;
}

Matrix NSREngine::gram_matrix(const Rational& level) {
    auto basis = nsr_basis(p_.sector, level);
    size_t d = basis.size();
    Matrix S(d, std::vector<ExactScalar>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i; j < d; ++j) S[i][j] = S[j][i] = pairing(basis[i], basis[j]);
    return S;
}

std::vector<ExactScalar> NSREngine::whittaker_pairing_vector(Tower sign, const Rational& level) {
    auto basis = nsr_basis(p_.sector, level);
    std::vector<ExactScalar> r(basis.size());
    for (size_t i = 0; i < basis.size(); ++i) {
        const BasisIndex& u = basis[i];
        ExactScalar factor(1);
        bool zero = false;
        for (long part : u.partition) {
            if (part == 1)
                factor *= (p_.sector == Sector::NS) ? kNsL1 : kRL1;
            else
                zero = true;  // L_{k>=2} kills |N>
        }
        for (const Rational& m : u.gmodes) {
            if (p_.sector == Sector::NS && m == make_rational(1, 2))
                factor *= kNsGHalf;  // G_{1/2}|N> = |N-1/2>
            else
                zero = true;  // G_{r>=3/2} (NS) and G_{k>=1} (R) kill |N>
        }
        if (p_.sector == Sector::R && u.tower != sign) zero = true;
        r[i] = zero ? ExactScalar() : factor;
    }
    return r;
}

std::vector<ExactScalar> NSREngine::whittaker_norms(Tower sign, const Rational& max_level) {
    Rational step = (p_.sector == Sector::NS) ? make_rational(1, 2) : Rational(1);
    std::vector<ExactScalar> out;
    for (Rational lv = 0; lv <= max_level; lv += step) {
        if (lv == 0) {
            out.push_back(1);
            continue;
        }
        Matrix S = gram_matrix(lv);
        auto rhs = whittaker_pairing_vector(sign, lv);
        auto sol = solve_linear(S, rhs);
        if (!sol) throw std::domain_error("degenerate P (Kac line) at level " + to_string(lv));
        ExactScalar norm;
        for (size_t i = 0; i < rhs.size(); ++i) norm += (*sol)[i] * rhs[i];
        out.push_back(norm);
    }
    return out;
}

std::vector<ExactScalar> NSREngine::whittaker_cross_pairings(const Rational& max_level) {
    if (p_.sector != Sector::R) throw std::logic_error("cross pairings live in the R sector");
    std::vector<ExactScalar> out;
    out.push_back(-(ExactScalar::i() * p_.P / ExactScalar::sqrt2()));
    for (Rational lv = 1; lv <= max_level; lv += 1) {
        Matrix S = gram_matrix(lv);
        auto rp = whittaker_pairing_vector(Tower::Plus, lv);
        auto rm = whittaker_pairing_vector(Tower::Minus, lv);
        auto cp = solve_linear(S, rp);
        auto cm = solve_linear(S, rm);
        if (!cp || !cm) throw std::domain_error("degenerate P (Kac line) at level " + to_string(lv));
        auto basis = nsr_basis(Sector::R, lv);
        NSRState nplus;
        for (size_t i = 0; i < basis.size(); ++i)
            if (!(*cp)[i].is_zero()) nplus[basis[i]] = (*cp)[i];
        NSRState g0n = act_G(0, nplus);
        ExactScalar x;
        for (size_t i = 0; i < basis.size(); ++i) {
            if ((*cm)[i].is_zero()) continue;
            for (const auto& [ix, v] : g0n) x += (*cm)[i] * pairing(basis[i], ix) * v;
        }
        out.push_back(x);
    }
    return out;
}

const std::vector<ExactScalar>& nsr_norms_cached(const NSRParams& p, const Rational& max_level) {
    static std::map<std::tuple<ExactScalar, ExactScalar, Sector>, std::vector<ExactScalar>> cache;
    auto key = std::make_tuple(p.c, p.P, p.sector);
    Rational step = (p.sector == Sector::NS) ? make_rational(1, 2) : Rational(1);
    long want = to_long(max_level / step) + 1;
    auto& entry = cache[key];
    if ((long)entry.size() < want) {
        NSREngine eng(p);
        entry = eng.whittaker_norms(Tower::Plus, max_level);
    }
    return entry;
}

GradedSeries nsr_block_series(const NSRParams& p, const Rational& order) {
    ExactScalar d = p.delta();
    if (!d.is_rational())
        throw std::domain_error("block base exponent is not rational: " + d.str());
    const auto& norms = nsr_norms_cached(p, order);
    Rational step = (p.sector == Sector::NS) ? make_rational(1, 2) : Rational(1);
    GradedSeries f(d.as_rational(), order);
    Rational lv = 0;
    for (const auto& v : norms) {
        if (lv > order) break;
        f.set(lv, v);
        lv += step;
    }
    return f;
}

}  // namespace pb
