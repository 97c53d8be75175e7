#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pb/exact_scalar.hpp"

using namespace pb;

namespace {

std::mt19937 rng(20240817);

Rational rand_rat() {
    std::uniform_int_distribution<long> num(-12, 12);
    std::uniform_int_distribution<long> den(1, 9);
    return make_rational(num(rng), den(rng));
}

ExactScalar rand_scalar() { return {rand_rat(), rand_rat(), rand_rat(), rand_rat()}; }

}  // namespace

TEST_CASE("rational helpers") {
    CHECK(make_rational(2, 4) == make_rational(1, 2));
    CHECK(rat_floor(make_rational(-3, 2)) == Rational(-2));
    CHECK(rat_floor(make_rational(3, 2)) == Rational(1));
    CHECK(is_half_integer_grid(make_rational(7, 2)));
    CHECK(!is_half_integer_grid(make_rational(1, 3)));
    CHECK(rat_pow(make_rational(2, 3), -2) == make_rational(9, 4));
    CHECK(parse_rational("-7/21") == make_rational(-1, 3));
    CHECK_THROWS(parse_rational("1.5"));
    CHECK_THROWS(parse_rational("3/0"));
}

TEST_CASE("basic products") {
    ExactScalar one_plus_i = ExactScalar(1) + ExactScalar::i();
    ExactScalar one_minus_i = ExactScalar(1) - ExactScalar::i();
    CHECK(one_plus_i * one_minus_i == ExactScalar(2));

    CHECK(ExactScalar::sqrt2().inverse() == ExactScalar(Rational(0), 0, make_rational(1, 2), 0));

    ExactScalar is2 = ExactScalar::i() * ExactScalar::sqrt2();
    CHECK(is2 * is2 == ExactScalar(-2));
}

TEST_CASE("field axioms on random values") {
    for (int t = 0; t < 200; ++t) {
        ExactScalar x = rand_scalar(), y = rand_scalar(), z = rand_scalar();
        CHECK((x + y) + z == x + (y + z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK((x * y) * z == x * (y * z));
        if (!x.is_zero()) CHECK(x * x.inverse() == ExactScalar(1));
    }
}

TEST_CASE("conjugation automorphisms") {
    for (int t = 0; t < 100; ++t) {
        ExactScalar x = rand_scalar(), y = rand_scalar();
        CHECK((x * y).conj_i() == x.conj_i() * y.conj_i());
        CHECK((x * y).conj_sqrt2() == x.conj_sqrt2() * y.conj_sqrt2());
        CHECK(x.conj_i().conj_i() == x);
    }
}

TEST_CASE("pow") {
    ExactScalar x = ExactScalar(2) + ExactScalar::i();
    CHECK(x.pow(0) == ExactScalar(1));
    CHECK(x.pow(3) == x * x * x);
    CHECK(x.pow(-2) == (x * x).inverse());
    CHECK(ExactScalar::i().pow(4) == ExactScalar(1));
}

TEST_CASE("pow_two") {
    CHECK(pow_two(Rational(3)) == ExactScalar(8));
    CHECK(pow_two(make_rational(1, 2)) == ExactScalar::sqrt2());
    CHECK(pow_two(Rational(-1)) == ExactScalar(make_rational(1, 2)));
    CHECK(pow_two(make_rational(-3, 2)) == ExactScalar(Rational(0), 0, make_rational(1, 4), 0));
    // exponent assembled from 4n^2 - 1 and -2*(1/8) at n = 1/4
    Rational e = 4 * make_rational(1, 16) - 1 - make_rational(1, 4);
    CHECK(e == Rational(-1));
    CHECK(pow_two(e) == ExactScalar(make_rational(1, 2)));
    CHECK_THROWS(pow_two(make_rational(1, 8)));
}

TEST_CASE("string round-trip") {
    for (int t = 0; t < 200; ++t) {
        ExactScalar x = rand_scalar();
        CHECK(ExactScalar::parse(x.str()) == x);
    }
    CHECK(ExactScalar::parse("0") == ExactScalar(0));
    CHECK(ExactScalar::parse("-I") == -ExactScalar::i());
    CHECK(ExactScalar::parse("3/4*I*R2") == ExactScalar(Rational(0), 0, 0, make_rational(3, 4)));
    CHECK(ExactScalar::parse("1 + R2") == ExactScalar(1) + ExactScalar::sqrt2());
    CHECK(ExactScalar(Rational(1), -1, 0, make_rational(-2, 3)).str() == "1 - 1*I - 2/3*I*R2");
    CHECK_THROWS(ExactScalar::parse("1 + + 2"));
    CHECK_THROWS(ExactScalar::parse("x"));
}

TEST_CASE("as_rational and errors") {
    CHECK(ExactScalar(make_rational(5, 3)).as_rational() == make_rational(5, 3));
    CHECK_THROWS(ExactScalar::i().as_rational());
    CHECK_THROWS(ExactScalar(0).inverse());
    CHECK_THROWS(ExactScalar(1) / ExactScalar(0));
}

TEST_CASE("to_complex") {
    auto v = (ExactScalar(1) + ExactScalar::sqrt2() * ExactScalar::i()).to_complex();
    CHECK(v.real() == doctest::Approx(1.0));
    CHECK(v.imag() == doctest::Approx(1.4142135623730951));
}
