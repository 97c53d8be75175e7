#include "pb/kiev.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <stdexcept>

namespace pb {

namespace {

double elapsed(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void require_nonresonant(const Rational& sigma) {
    if (is_half_integer_grid(sigma))
        throw std::domain_error("resonant sigma: " + to_string(sigma));
}

GradedSeries c1_block(const Rational& delta, long order) {
    return block_series(ExactScalar(1), delta, order);
}

// acc += coeff * sum_{i,j} f_i g_j w(E1, E2) z^{E1 + E2 + shift}, cut at the
// trusted order of acc. E1, E2 are the absolute exponents of the two factors.
void add_pairing(ExponentKeyedSum& acc, const Rational& coeff, const GradedSeries& f,
                 const GradedSeries& g, const Rational& shift,
                 const std::function<Rational(const Rational&, const Rational&)>& w) {
    if (coeff == 0) return;
    ExactScalar cf{coeff};
    for (const auto& [j1, v1] : f.raw()) {
        Rational e1 = f.base() + make_rational(j1, 2);
        for (const auto& [j2, v2] : g.raw()) {
            Rational e2 = g.base() + make_rational(j2, 2);
            Rational e = e1 + e2 + shift;
            if (e > acc.order()) break;  // raw() is exponent-sorted
            Rational wv = w(e1, e2);
            if (wv == 0) continue;
            acc.add_term(e, cf * ExactScalar(wv) * v1 * v2);
        }
    }
}

const std::function<Rational(const Rational&, const Rational&)> kUnitWeight =
    [](const Rational&, const Rational&) { return Rational(1); };

}  // namespace

Rational c_ratio(const Rational& sigma, const Rational& n) {
    if (!is_half_integer_grid(n))
        throw std::invalid_argument("shift must have 2n integral: " + to_string(n));
    require_nonresonant(sigma);
    long two_n = to_long(2 * n);
    Rational two_s = 2 * sigma;
    Rational v;
    if (two_n >= 0) {
        v = rat_pow(two_s, two_n);
        for (long i = 1; i < two_n; ++i) v *= rat_pow(two_s + i, 2 * (two_n - i));
    } else {
        v = rat_pow(two_s, -two_n);
        for (long i = 1; i < -two_n; ++i) v *= rat_pow(Rational(i - two_s), 2 * (-two_n - i));
    }
    Rational r = 1 / v;
    // The sign alternates with floor(n) on both sides of zero; this is what
    // makes the shift law and the bilinear identities close on half-integers.
    if (to_long(rat_floor(n)) % 2 != 0) r = -r;
    return r;
}

TauSeries tau_series(const Rational& sigma, const Rational& stilde, long order) {
    if (order < 0) throw std::invalid_argument("negative order");
    if (stilde == 0) throw std::invalid_argument("stilde must be nonzero");
    require_nonresonant(sigma);
    auto lead = [&](long n) -> Rational {
        Rational a = sigma + n;
        return a * a;
    };
    // The leading exponent is minimized near n = -sigma.
    long nc = to_long(rat_floor(-sigma)) ;
    Rational emin = lead(nc);
    for (long n = nc - 1; n <= nc + 1; ++n)
        if (lead(n) < emin) emin = lead(n);
    Rational bound = emin + order;

    TauSeries t;
    t.sigma = sigma;
    t.stilde = stilde;
    t.combined = ExponentKeyedSum(bound);
    for (long n = nc - order - 2; n <= nc + order + 2; ++n) {
        if (lead(n) > bound) continue;
        t.window.push_back(n);
    }
    // Distinct per-n exponent grids: two towers collide iff their leading
    // exponents differ by an integer, which puts sigma on a rational line the
    // non-resonance condition is meant to exclude.
    for (size_t i = 0; i < t.window.size(); ++i)
        for (size_t j = i + 1; j < t.window.size(); ++j)
            if (is_integer(lead(t.window[i]) - lead(t.window[j])))
                throw std::domain_error("exponent collision between shifts " +
                                        std::to_string(t.window[i]) + " and " +
                                        std::to_string(t.window[j]) + ": resonant sigma " +
                                        to_string(sigma));
    for (long n : t.window) {
        Rational l = lead(n);
        long M = to_long(rat_floor(bound - l));
        ExactScalar coeff{c_ratio(sigma, Rational(n)) * rat_pow(stilde, n)};
        GradedSeries f = c1_block(l, M).scale(coeff);
        for (const auto& [j, v] : f.raw()) t.combined.add_term(l + make_rational(j, 2), v);
        t.per_n.emplace(n, std::move(f));
    }
    return t;
}

TauSeries tau_half_series(const Rational& sigma, const Rational& stilde, long order) {
    require_nonresonant(sigma);
    if (stilde == 0) throw std::invalid_argument("stilde must be nonzero");
    Rational two_s = 2 * sigma;
    // The partner parameters are (1/2 - sigma, 1/((2s)^2(1-2s)^2 st)); the
    // sigma -> -sigma symmetry of the expansion turns that into the same
    // series at sigma - 1/2 with the reciprocal weight.
    return tau_series(sigma - make_rational(1, 2),
                      Rational(two_s * two_s * (1 - two_s) * (1 - two_s) * stilde), order);
}

Report verify_tau3(const Rational& sigma, long order, const std::vector<long>& m_range,
                   long window) {
    auto t0 = std::chrono::steady_clock::now();
    require_nonresonant(sigma);
    Report rep;
    rep.check = "tau3";
    rep.params["sigma"] = to_string(sigma);
    rep.order = order;
    std::string ms;
    for (long m : m_range) ms += (ms.empty() ? "" : ",") + std::to_string(m);
    rep.params["m_range"] = ms;
    if (window >= 0) rep.params["window"] = std::to_string(window);

    for (long m : m_range) {
        auto lead = [&](long n) -> Rational {
            Rational a = sigma + n + m, b = sigma - n;
            return a * a + b * b;
        };
        long span = order + std::abs(m) + 3;
        Rational emin = lead(0);
        for (long n = -span; n <= span; ++n)
            if (lead(n) < emin) emin = lead(n);
        Rational bound = emin + order;
        ExponentKeyedSum res(bound);
        for (long n = -span; n <= span; ++n) {
            if (lead(n) > bound) continue;
            if (window >= 0 && std::abs(n) > window)
                throw std::invalid_argument("window " + std::to_string(window) +
                                            " too small for order " + std::to_string(order) +
                                            " (needs shift " + std::to_string(n) + ")");
            Rational q = c_ratio(sigma, Rational(n + m)) * c_ratio(sigma, Rational(-n));
            long M = to_long(rat_floor(bound - lead(n)));
            Rational a = sigma + n + m, b = sigma - n;
            GradedSeries f = c1_block(a * a, M);
            GradedSeries g = c1_block(b * b, M);
            add_pairing(res, q, f, g, Rational(0),
                        [](const Rational& e1, const Rational& e2) -> Rational {
                            Rational d = e1 - e2, s = e1 + e2, dd = d * d;
                            return Rational(dd * dd / 2 - s * dd + dd / 2);
                        });
            add_pairing(res, 2 * q, f, g, Rational(1), kUnitWeight);
        }
        rep.note_residuals(res);
    }
    rep.seconds = elapsed(t0);
    return rep;
}

Report verify_toda_c1(const Rational& sigma, long order) {
    auto t0 = std::chrono::steady_clock::now();
    require_nonresonant(sigma);
    Report rep;
    rep.check = "toda-c1";
    rep.params["sigma"] = to_string(sigma);
    rep.order = order;
    for (long m = 0; m <= 1; ++m) {
        // Doubled shift index t = 2n: even t pairs carry the second-derivative
        // weight, odd t pairs sit on the z^{1/2}-shifted lattice with weight 1.
        auto lead = [&](long t) -> Rational {
            Rational a = sigma + make_rational(t, 2) + m, b = sigma - make_rational(t, 2);
            Rational l = a * a + b * b;
            if (t % 2 != 0) l += make_rational(1, 2);
            return l;
        };
        long span = 2 * (order + m + 3);
        Rational emin = lead(0);
        for (long t = -span; t <= span; ++t)
            if (lead(t) < emin) emin = lead(t);
        Rational bound = emin + order;
        ExponentKeyedSum res(bound);
        for (long t = -span; t <= span; ++t) {
            if (lead(t) > bound) continue;
            Rational n = make_rational(t, 2);
            Rational q = c_ratio(sigma, n + m) * c_ratio(sigma, Rational(-n));
            Rational a = sigma + n + m, b = sigma - n;
            long M = to_long(rat_floor(bound - lead(t)));
            GradedSeries f = c1_block(a * a, M);
            GradedSeries g = c1_block(b * b, M);
            if (t % 2 == 0)
                add_pairing(res, q, f, g, Rational(0),
                            [](const Rational& e1, const Rational& e2) -> Rational {
                                Rational d = e1 - e2;
                                return Rational(d * d / 2);
                            });
            else
                add_pairing(res, q, f, g, make_rational(1, 2), kUnitWeight);
        }
        rep.note_residuals(res);
    }
    rep.seconds = elapsed(t0);
    return rep;
}

Report verify_okamoto_c1(const Rational& sigma, long order) {
    auto t0 = std::chrono::steady_clock::now();
    require_nonresonant(sigma);
    Report rep;
    rep.check = "okamoto-c1";
    rep.params["sigma"] = to_string(sigma);
    rep.order = order;
    // Pairs (n, -1/2 - n) over integer n; the leading exponent is minimized
    // near n = -1/4 independently of sigma.
    auto lead = [&](long n) -> Rational {
        Rational a = sigma + n, b = sigma - make_rational(1, 2) - n;
        return a * a + b * b;
    };
    long span = order + 3;
    Rational emin = lead(0);
    for (long n = -span; n <= span; ++n)
        if (lead(n) < emin) emin = lead(n);
    Rational bound = emin + order;
    ExponentKeyedSum res1(bound), res2(bound);
    for (long n = -span; n <= span; ++n) {
        if (lead(n) > bound) continue;
        Rational q = c_ratio(sigma, Rational(n)) * c_ratio(sigma, Rational(-n) - make_rational(1, 2));
        Rational a = sigma + n, b = sigma - make_rational(1, 2) - n;
        long M = to_long(rat_floor(bound - lead(n)));
        GradedSeries f = c1_block(a * a, M);
        GradedSeries g = c1_block(b * b, M);
        add_pairing(res1, q, f, g, Rational(0),
                    [](const Rational& e1, const Rational& e2) -> Rational {
                        Rational d = e1 - e2, s = e1 + e2;
                        return Rational(d * d - (s - make_rational(1, 8)) / 2);
                    });
        add_pairing(res2, q, f, g, Rational(0),
                    [](const Rational& e1, const Rational& e2) -> Rational {
                        Rational d = e1 - e2, s = e1 + e2;
                        return Rational(d * d * d - (s - make_rational(1, 8)) / 2 * d);
                    });
    }
    rep.note_residuals(res1);
    rep.note_residuals(res2);
    rep.seconds = elapsed(t0);
    return rep;
}

Rational b_coeff(long n) {
    Rational v = rat_pow(Rational(2), 4 * n * n + 2 * n);
    if (n >= 0)
        for (long i = 0; i < 2 * n; ++i) v /= rat_pow(Rational(2 * i + 1), 2 * (2 * n - i));
    else
        for (long i = 0; i <= -2 * n - 2; ++i) v /= rat_pow(Rational(2 * i + 1), 2 * (-2 * n - i - 1));
    return v;
}

Report verify_blockquarter(int sign, long order) {
    auto t0 = std::chrono::steady_clock::now();
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    if (order < 0) throw std::invalid_argument("negative order");
    Report rep;
    rep.check = "blockquarter";
    rep.params["sign"] = (sign > 0) ? "+" : "-";
    rep.order = order;
    GradedSeries lhs(make_rational(1, 16), Rational(order));
    for (long n = -(order + 2); n <= order + 2; ++n) {
        Rational off = Rational(n) * n + make_rational(n, 2);  // (1/4+n)^2 - 1/16
        if (off > order) continue;
        long M = to_long(rat_floor(Rational(order) - off));
        Rational q = make_rational(1, 4) + n;
        ExactScalar coeff{b_coeff(n)};
        if (sign < 0 && n % 2 != 0) coeff = -coeff;
        GradedSeries f = c1_block(q * q, M);
        for (const auto& [j, v] : f.raw()) {
            Rational step = off + make_rational(j, 2);
            lhs.set(step, lhs.at(step) + coeff * v);
        }
    }
    GradedSeries rhs = GradedSeries::exp_sqrt(ExactScalar(4 * sign), make_rational(1, 16),
                                              Rational(order));
    rep.note_residuals(lhs - rhs);
    rep.seconds = elapsed(t0);
    return rep;
}

Report verify_hook_bn(long n_max) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.check = "hook-bn";
    rep.params["n_max"] = std::to_string(n_max);
    rep.order = n_max;
    for (long n = -n_max; n <= n_max; ++n) {
        long k = (n > 0) ? 2 * n : (n < 0 ? -2 * n - 1 : 0);
        long N = k * (k + 1) / 2;
        mpz_class hooks = staircase_hook_product(k);
        mpz_class closed = 1;
        for (long i = 0; i < k; ++i) {
            mpz_class t;
            mpz_pow_ui(t.get_mpz_t(), mpz_class(2 * i + 1).get_mpz_t(),
                       static_cast<unsigned long>(k - i));
            closed *= t;
        }
        Rational v = rat_pow(Rational(2), N) / Rational(hooks);
        Rational d = v * v - b_coeff(n);
        if (hooks != closed || d != 0) {
            rep.ok = false;
            rep.residuals.emplace_back(Rational(n), ExactScalar(d));
        }
    }
    rep.seconds = elapsed(t0);
    return rep;
}

Report verify_backlund_profd(const Rational& sigma, const Rational& stilde, long order) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.check = "backlund";
    rep.params["sigma"] = to_string(sigma);
    rep.params["stilde"] = to_string(stilde);
    TauSeries t = tau_series(sigma, stilde, order);
    TauSeries t1 = tau_half_series(sigma, stilde, order);
    ExponentKeyedSum zeta = t.combined.euler() / t.combined;
    ExponentKeyedSum zeta1 = t1.combined.euler() / t1.combined;
    ExponentKeyedSum prod = zeta.euler() * zeta1.euler();
    rep.order = prod.order();
    ExponentKeyedSum z1(prod.order());
    if (Rational(1) <= prod.order()) z1.add_term(Rational(1), ExactScalar(1));
    rep.note_residuals(prod - z1);
    rep.seconds = elapsed(t0);
    return rep;
}

Report verify_bridge(const Rational& sigma, long two_n_max) {
    auto t0 = std::chrono::steady_clock::now();
    require_nonresonant(sigma);
    Report rep;
    rep.check = "bridge";
    rep.params["sigma"] = to_string(sigma);
    rep.order = two_n_max;
    EmbeddingParams p =
        EmbeddingParams::create(ExactScalar::i(), ExactScalar::i() * ExactScalar(Rational(2 * sigma)));
    ExactScalar two_p = ExactScalar(2) * p.P;
    for (long t = 1; t <= two_n_max; ++t) {
        Rational n = make_rational(t, 2);
        ExactScalar lhs{c_ratio(sigma, n) * c_ratio(sigma, Rational(-n))};
        ExactScalar den = s_even(p, two_p, t) * s_even(p, two_p + p.Q, t);
        if (den.is_zero()) throw std::domain_error("resonant P at 2n = " + std::to_string(t));
        ExactScalar rhs = pow_two(Rational(2 * t * t)) / den;
        ExactScalar d = lhs - rhs;
        if (!d.is_zero()) {
            rep.ok = false;
            rep.residuals.emplace_back(n, d);
        }
    }
    rep.seconds = elapsed(t0);
    return rep;
}

}  // namespace pb
