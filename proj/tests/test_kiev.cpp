#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pb/kiev.hpp"

using namespace pb;

namespace {

const Rational kHalf = make_rational(1, 2);
const Rational kSigma = make_rational(3, 10);

Rational gamma_shift(const Rational& s) {
    Rational t = 2 * s;
    return 1 / (t * t * rat_pow(t + 1, 4) * rat_pow(t + 2, 2));
}

}  // namespace

TEST_CASE("coefficient ratios by hand") {
    Rational s = kSigma, t = 2 * s;  // t = 3/5
    CHECK(c_ratio(s, Rational(0)) == 1);
    CHECK(c_ratio(s, kHalf) == 1 / t);
    CHECK(c_ratio(s, Rational(-kHalf)) == -1 / t);
    CHECK(c_ratio(s, Rational(1)) == -1 / (t * t * (t + 1) * (t + 1)));
    CHECK(c_ratio(s, Rational(-1)) == -1 / (t * t * (1 - t) * (1 - t)));
    CHECK(c_ratio(s, make_rational(3, 2)) ==
          -1 / (t * t * t * rat_pow(t + 1, 4) * rat_pow(t + 2, 2)));
}

TEST_CASE("coefficient ratio preconditions") {
    CHECK_THROWS_AS(c_ratio(kSigma, make_rational(1, 3)), std::invalid_argument);
    CHECK_THROWS_AS(c_ratio(kHalf, Rational(1)), std::domain_error);
    CHECK_THROWS_AS(c_ratio(Rational(2), Rational(1)), std::domain_error);
    CHECK_THROWS_AS(c_ratio(Rational(-3), kHalf), std::domain_error);
}

TEST_CASE("coefficient ratio symmetry under sigma, n negation") {
    for (const Rational& s : std::vector<Rational>{kSigma, make_rational(3, 7), make_rational(-5, 13)})
        for (long k = -6; k <= 6; ++k) {
            Rational n = make_rational(k, 2);
            CHECK(c_ratio(Rational(-s), Rational(-n)) == c_ratio(s, n));
        }
}

TEST_CASE("coefficient ratio shift law") {
    for (const Rational& s : std::vector<Rational>{kSigma, make_rational(3, 7)})
        for (long n = -2; n <= 3; ++n) {
            Rational lhs = c_ratio(s, Rational(n));
            Rational rhs = c_ratio(s, Rational(1)) * rat_pow(gamma_shift(s), n - 1) *
                           c_ratio(s + 1, Rational(n - 1));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("algebraic-branch coefficients by hand") {
    CHECK(b_coeff(0) == 1);
    CHECK(b_coeff(1) == make_rational(64, 9));
    CHECK(b_coeff(-1) == 4);
    CHECK(b_coeff(2) == Rational(1048576) / (729 * Rational(625) * 49));
    CHECK(b_coeff(-2) == make_rational(4096, 2025));
}

TEST_CASE("hook count reproduces the coefficients") {
    Report rep = verify_hook_bn(4);
    CHECK(rep.ok);
    CHECK(rep.residuals.empty());
}

TEST_CASE("quarter-weight block resummation, both signs") {
    for (int sign : {1, -1}) {
        Report rep = verify_blockquarter(sign, 5);
        CHECK(rep.ok);
        CHECK(rep.residuals.empty());
    }
    CHECK_THROWS_AS(verify_blockquarter(2, 3), std::invalid_argument);
}

TEST_CASE("tau series structure at sigma = 3/10") {
    TauSeries t = tau_series(kSigma, Rational(1), 3);
    CHECK(t.window == std::vector<long>{-2, -1, 0, 1});
    CHECK(t.per_n.size() == 4);
    // pinned normalization: coefficient 1 at z^{sigma^2}
    CHECK(t.combined.at(make_rational(9, 100)) == ExactScalar(1));
    CHECK(t.combined.leading_exponent() == make_rational(9, 100));
    // n = -1 tower enters with its coefficient ratio
    CHECK(t.combined.at(make_rational(49, 100)) == ExactScalar(make_rational(-625, 36)));
    // first descendant of the n = 0 tower: 1/(2 Delta)
    CHECK(t.combined.at(make_rational(109, 100)) == ExactScalar(make_rational(50, 9)));
    // stilde rides along as a geometric weight per shift
    TauSeries t2 = tau_series(kSigma, make_rational(2, 3), 3);
    CHECK(t2.combined.at(make_rational(49, 100)) ==
          ExactScalar(make_rational(-625, 36) * make_rational(3, 2)));
}

TEST_CASE("tau series rejects resonance") {
    CHECK_THROWS_AS(tau_series(kHalf, Rational(1), 3), std::domain_error);
    CHECK_THROWS_AS(tau_series(Rational(3), Rational(1), 3), std::domain_error);
    // 2 sigma = 1/2 is off the integers but the shifted towers still collide
    CHECK_THROWS_AS(tau_series(make_rational(1, 4), Rational(1), 2), std::domain_error);
    CHECK_THROWS_AS(tau_series(kSigma, Rational(0), 3), std::invalid_argument);
}

TEST_CASE("half-shifted partner reindexes the parameters") {
    TauSeries t = tau_half_series(kSigma, Rational(1), 2);
    CHECK(t.sigma == make_rational(-1, 5));
    CHECK(t.stilde == make_rational(36, 625));
}

TEST_CASE("fourth-order bilinear identity") {
    Report rep = verify_tau3(kSigma, 4, {-1, 0, 1});
    CHECK(rep.ok);
    CHECK(rep.residuals.empty());
}

TEST_CASE("bilinear identity window guard") {
    CHECK_NOTHROW(verify_tau3(kSigma, 4, {0}, 1));
    CHECK_THROWS_AS(verify_tau3(kSigma, 4, {0}, 0), std::invalid_argument);
}

TEST_CASE("toda-like pair of identities") {
    Report rep = verify_toda_c1(kSigma, 4);
    CHECK(rep.ok);
    CHECK(rep.residuals.empty());
    Report rep2 = verify_toda_c1(make_rational(3, 7), 3);
    CHECK(rep2.ok);
}

TEST_CASE("okamoto-like pair of identities") {
    Report rep = verify_okamoto_c1(kSigma, 4);
    CHECK(rep.ok);
    CHECK(rep.residuals.empty());
}

TEST_CASE("backlund product of euler-primed log derivatives") {
    Report rep = verify_backlund_profd(kSigma, Rational(1), 5);
    CHECK(rep.ok);
    CHECK(rep.residuals.empty());
    Report rep2 = verify_backlund_profd(make_rational(3, 7), Rational(2), 4);
    CHECK(rep2.ok);
}

TEST_CASE("coefficient ratios match the rescaled decomposition weights") {
    for (const Rational& s : std::vector<Rational>{kSigma, make_rational(3, 7)}) {
        Report rep = verify_bridge(s, 6);
        CHECK(rep.ok);
        CHECK(rep.residuals.empty());
    }
}
