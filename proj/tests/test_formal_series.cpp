#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pb/series.hpp"

using namespace pb;

namespace {

std::mt19937 rng(20240817);

ExactScalar rand_scalar() {
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 4);
    return {make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng)),
            make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng))};
}

GradedSeries rand_series(const Rational& base, long max_key, bool unit_lead = false) {
    GradedSeries f(base, make_rational(max_key, 2));
    if (unit_lead) f.set(0, ExactScalar(1));
    for (long j = unit_lead ? 1 : 0; j <= max_key; ++j) f.set(make_rational(j, 2), rand_scalar());
    return f;
}

long binom(long n, long k) {
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("monomial algebra") {
    Rational a = make_rational(1, 3), b = make_rational(5, 2);
    auto f = GradedSeries::monomial(a, 4) * GradedSeries::monomial(b, 4);
    CHECK(f.base() == a + b);
    CHECK(f.at(0) == ExactScalar(1));

    GradedSeries one(Rational(0), Rational(2));
    one.set(0, 1);
    GradedSeries g = one, h = one;
    g.set(1, 1);
    h.set(1, -1);
    auto prod = g * h;
    CHECK(prod.at(0) == ExactScalar(1));
    CHECK(prod.at(1) == ExactScalar(0));
    CHECK(prod.at(2) == ExactScalar(-1));
}

TEST_CASE("add rebases and propagates order") {
    auto f = GradedSeries::monomial(Rational(0), Rational(3));
    auto g = GradedSeries::monomial(make_rational(1, 2), Rational(2));
    auto s = f + g;
    CHECK(s.base() == Rational(0));
    CHECK(s.order() == make_rational(5, 2));
    CHECK(s.at(0) == ExactScalar(1));
    CHECK(s.at(make_rational(1, 2)) == ExactScalar(1));
    CHECK_THROWS(s.at(Rational(3)));
    // incompatible grids rejected
    CHECK_THROWS(f + GradedSeries::monomial(make_rational(1, 3), Rational(2)));
}

TEST_CASE("mul distributes over add") {
    for (int t = 0; t < 20; ++t) {
        auto f = rand_series(make_rational(1, 2), 6);
        auto g = rand_series(make_rational(1, 2), 6);
        auto h = rand_series(make_rational(1, 2), 6);
        CHECK((f * (g + h)).residual_steps(f * g + f * h).empty());
    }
}

TEST_CASE("euler") {
    Rational d = make_rational(2, 7);
    auto f = GradedSeries::monomial(d, Rational(2));
    CHECK(f.euler().at(0) == ExactScalar(d));

    GradedSeries g(make_rational(1, 16), Rational(1));
    g.set(0, 1);
    g.set(make_rational(1, 2), 4);
    auto eg = g.euler();
    CHECK(eg.at(0) == ExactScalar(make_rational(1, 16)));
    CHECK(eg.at(make_rational(1, 2)) == ExactScalar(4) * ExactScalar(make_rational(9, 16)));

    auto one = GradedSeries::monomial(Rational(0), Rational(3));
    CHECK(one.euler().is_zero());
}

TEST_CASE("euler is a derivation") {
    for (int t = 0; t < 20; ++t) {
        auto f = rand_series(make_rational(3, 2), 5);
        auto g = rand_series(make_rational(-1, 2), 5);
        CHECK((f * g).euler().residual_steps(f.euler() * g + f * g.euler()).empty());
    }
}

TEST_CASE("hirota on monomials") {
    Rational a = make_rational(2, 5), b = make_rational(-1, 3);
    auto za = GradedSeries::monomial(a, Rational(2));
    auto zb = GradedSeries::monomial(b, Rational(2));
    auto d0 = hirota(0, 1, -1, 0, za, zb);
    CHECK(d0.at(0) == ExactScalar(1));
    CHECK(hirota(2, 1, -1, 0, za, za).is_zero());
    CHECK(hirota(2, 1, -1, 0, za, zb).at(0) == ExactScalar(a - b).pow(2));
}

TEST_CASE("hirota leading coefficient example") {
    Rational s = make_rational(3, 10);
    Rational d1 = s * s, d2 = (s - make_rational(1, 2)) * (s - make_rational(1, 2));
    GradedSeries f(d1, Rational(1));
    f.set(0, 1);
    f.set(1, rand_scalar());
    auto g = GradedSeries::monomial(d2, Rational(1));
    CHECK(hirota(1, 1, -1, 0, f, g).at(0) == ExactScalar(d1 - d2));
}

TEST_CASE("hirota equals binomial expansion in euler derivatives") {
    for (int t = 0; t < 10; ++t) {
        auto f = rand_series(make_rational(1, 3), 4);
        auto g = rand_series(make_rational(1, 4), 4);
        for (long k = 0; k <= 4; ++k) {
            auto direct = hirota(k, 1, -1, 0, f, g);
            GradedSeries acc(f.base() + g.base(), direct.order());
            auto ef = f;
            for (long j = 0; j <= k; ++j) {
                auto eg = g;
                for (long i = 0; i < k - j; ++i) eg = eg.euler();
                long sign = ((k - j) % 2 == 0) ? 1 : -1;
                acc = acc + (ef * eg).scale(ExactScalar(sign * binom(k, j)));
                ef = ef.euler();
            }
            CHECK(direct.residual_steps(acc).empty());
        }
    }
}

TEST_CASE("hirota weight offset via lower orders") {
    ExactScalar off = ExactScalar(make_rational(2, 3)) + ExactScalar::i();
    ExactScalar e1 = ExactScalar(2), e2 = ExactScalar(make_rational(1, 2));
    auto f = rand_series(make_rational(1, 2), 4);
    auto g = rand_series(Rational(1), 4);
    for (long k = 0; k <= 3; ++k) {
        auto direct = hirota(k, e1, e2, off, f, g);
        GradedSeries acc(f.base() + g.base(), direct.order());
        for (long j = 0; j <= k; ++j)
            acc = acc + hirota(j, e1, e2, 0, f, g).scale(off.pow(k - j) * ExactScalar(binom(k, j)));
        CHECK(direct.residual_steps(acc).empty());
    }
}

TEST_CASE("hirota antisymmetry") {
    for (int t = 0; t < 10; ++t) {
        auto f = rand_series(make_rational(1, 2), 5);
        auto g = rand_series(make_rational(3, 2), 5);
        for (long k = 0; k <= 4; ++k) {
            long sign = (k % 2 == 0) ? 1 : -1;
            CHECK(hirota(k, 1, -1, 0, f, g)
                      .residual_steps(hirota(k, 1, -1, 0, g, f).scale(ExactScalar(sign)))
                      .empty());
        }
        CHECK(hirota(3, 1, -1, 0, f, f).is_zero());
    }
}

TEST_CASE("division and log derivative") {
    auto zd = GradedSeries::monomial(make_rational(5, 7), Rational(3));
    CHECK(zd.log_derivative().at(0) == ExactScalar(make_rational(5, 7)));

    GradedSeries f(Rational(0), Rational(3));
    f.set(0, 1);
    f.set(1, 1);
    auto ld = f.log_derivative();
    CHECK(ld.at(1) == ExactScalar(1));
    CHECK(ld.at(2) == ExactScalar(-1));
    CHECK(ld.at(3) == ExactScalar(1));

    GradedSeries zero_lead(Rational(0), Rational(2));
    zero_lead.set(1, 1);
    CHECK_THROWS(zero_lead.log_derivative());

    for (int t = 0; t < 10; ++t) {
        auto a = rand_series(make_rational(1, 2), 6);
        auto b = rand_series(Rational(0), 6, true);
        CHECK(((a / b) * b).residual_steps(a).empty());
    }
}

TEST_CASE("log derivative is additive over products") {
    for (int t = 0; t < 10; ++t) {
        auto f = rand_series(make_rational(2, 3), 5, true);
        auto g = rand_series(make_rational(-1, 3), 5, true);
        CHECK((f * g).log_derivative().residual_steps(f.log_derivative() + g.log_derivative()).empty());
    }
}

TEST_CASE("exp_sqrt") {
    auto flat = GradedSeries::exp_sqrt(0, make_rational(1, 4), Rational(3));
    CHECK(flat.at(0) == ExactScalar(1));
    CHECK(flat.at(1) == ExactScalar(0));

    auto e = GradedSeries::exp_sqrt(-4, make_rational(1, 16), Rational(3));
    CHECK(e.at(1) == ExactScalar(8));
    CHECK(e.at(make_rational(1, 2)) == ExactScalar(-4));

    auto ep = GradedSeries::exp_sqrt(4, make_rational(1, 16), Rational(3));
    auto prod = e * ep;
    CHECK(prod.base() == make_rational(1, 8));
    CHECK(prod.at(0) == ExactScalar(1));
    for (long j = 1; j <= 6; ++j) CHECK(prod.at(make_rational(j, 2)) == ExactScalar(0));
}

TEST_CASE("exponent keyed sums") {
    ExponentKeyedSum f(Rational(10));
    f.add_term(make_rational(9, 100), 1);
    f.add_term(make_rational(49, 100), 2);
    CHECK(f.leading_exponent() == make_rational(9, 100));
    CHECK(f.at(make_rational(49, 100)) == ExactScalar(2));
    CHECK(f.at(Rational(5)) == ExactScalar(0));
    CHECK_THROWS(f.at(Rational(11)));

    auto e = f.euler();
    CHECK(e.at(make_rational(9, 100)) == ExactScalar(make_rational(9, 100)));

    // division round trip
    ExponentKeyedSum g(Rational(10));
    g.add_term(make_rational(1, 2), 3);
    g.add_term(Rational(1), -1);
    g.add_term(make_rational(7, 3), make_rational(5, 4));
    auto q = f / g;
    auto back = q * g;
    CHECK(back.residual_exponents(f.truncated(back.order())).empty());
}

TEST_CASE("graded to keyed round trip") {
    auto f = rand_series(make_rational(2, 5), 6);
    auto k = ExponentKeyedSum::from_graded(f);
    CHECK(k.order() == f.base() + f.order());
    for (long j = 0; j <= 6; ++j) {
        Rational st = make_rational(j, 2);
        CHECK(k.at(f.base() + st) == f.at(st));
    }
    auto f2 = rand_series(make_rational(2, 5), 6);
    auto sum = ExponentKeyedSum::from_graded(f) + ExponentKeyedSum::from_graded(f2);
    auto gsum = ExponentKeyedSum::from_graded(f + f2);
    CHECK(sum.residual_exponents(gsum).empty());
}
