#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pb/nsr.hpp"

using namespace pb;

namespace {

const Rational kHalf = make_rational(1, 2);

NSRState hw_state(Tower t = Tower::None) {
    NSRState s;
    BasisIndex hw;
    hw.tower = t;
    s[hw] = 1;
    return s;
}

long g_parity(const BasisIndex& ix) { return ix.gmodes.size() % 2; }

}  // namespace

TEST_CASE("delta parametrization") {
    NSRParams ns{ExactScalar(9), ExactScalar(make_rational(1, 3)), Sector::NS};
    // Q^2 = 4: delta = 4/8 - P^2/2
    CHECK(ns.delta() == ExactScalar(make_rational(1, 2)) - ExactScalar(make_rational(1, 18)));
    NSRParams r{ExactScalar(9), ExactScalar(make_rational(1, 3)), Sector::R};
    CHECK(r.delta() == ns.delta() + ExactScalar(make_rational(1, 16)));
}

TEST_CASE("NS anticommutator on highest weight") {
    NSRParams p{ExactScalar(make_rational(7, 2)), ExactScalar(make_rational(2, 5)), Sector::NS};
    NSREngine eng(p);
    auto s = eng.act_G(-kHalf, hw_state());
    auto r = eng.act_G(kHalf, s);
    BasisIndex hw;
    CHECK(r.at(hw) == ExactScalar(2) * p.delta());
}

TEST_CASE("R zero mode") {
    NSRParams p{ExactScalar(5), ExactScalar(make_rational(3, 7)), Sector::R};
    NSREngine eng(p);
    auto once = eng.act_G(0, hw_state(Tower::Plus));
    BasisIndex hw_minus;
    hw_minus.tower = Tower::Minus;
    CHECK(once.at(hw_minus) == -(ExactScalar::i() * p.P / ExactScalar::sqrt2()));
    auto twice = eng.act_G(0, once);
    BasisIndex hw_plus;
    hw_plus.tower = Tower::Plus;
    ExactScalar got = twice.at(hw_plus);
    CHECK(got == p.delta() - p.c / ExactScalar(16));
    CHECK(got == -(p.P * p.P) / ExactScalar(2));
}

TEST_CASE("R: L_1 G_{-1} on highest weight") {
    NSRParams p{ExactScalar(5), ExactScalar(make_rational(3, 7)), Sector::R};
    NSREngine eng(p);
    auto s = eng.act_G(-1, hw_state(Tower::Plus));
    auto r = eng.act_L(1, s);
    BasisIndex hw_minus;
    hw_minus.tower = Tower::Minus;
    REQUIRE(r.size() == 1);
    CHECK(r.at(hw_minus) == ExactScalar(make_rational(3, 2)) * -(ExactScalar::i() * p.P / ExactScalar::sqrt2()));
}

TEST_CASE("gram matrices") {
    NSRParams ns{ExactScalar(make_rational(11, 3)), ExactScalar(make_rational(2, 7)), Sector::NS};
    NSREngine eng(ns);
    auto S = eng.gram_matrix(kHalf);
    REQUIRE(S.size() == 1);
    CHECK(S[0][0] == ExactScalar(2) * ns.delta());

    NSRParams rp{ExactScalar(5), ExactScalar(make_rational(3, 7)), Sector::R};
    NSREngine reng(rp);
    auto S0 = reng.gram_matrix(0);
    REQUIRE(S0.size() == 2);
    CHECK(S0[0][0] == ExactScalar(1));
    CHECK(S0[1][1] == ExactScalar(1));
    CHECK(S0[0][1] == ExactScalar(0));

    auto basis = nsr_basis(Sector::R, 1);
    auto S1 = reng.gram_matrix(1);
    ExactScalar g0 = -(ExactScalar::i() * rp.P / ExactScalar::sqrt2());
    for (size_t i = 0; i < basis.size(); ++i) {
        for (size_t j = 0; j < basis.size(); ++j) {
            CHECK(S1[i][j] == S1[j][i]);
            if (basis[i].partition == Partition{1} && basis[i].tower == Tower::Plus &&
                basis[j].gmodes == std::vector<Rational>{1} && basis[j].tower == Tower::Minus)
                CHECK(S1[i][j] == ExactScalar(make_rational(3, 2)) * g0);
        }
    }
}

TEST_CASE("NS gram grading by G parity") {
    NSRParams ns{ExactScalar(make_rational(11, 3)), ExactScalar(make_rational(2, 7)), Sector::NS};
    NSREngine eng(ns);
    for (Rational lv : {Rational(2), make_rational(5, 2)}) {
        auto basis = nsr_basis(Sector::NS, lv);
        auto S = eng.gram_matrix(lv);
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = 0; j < basis.size(); ++j) {
                CHECK(S[i][j] == S[j][i]);
                if (g_parity(basis[i]) != g_parity(basis[j])) CHECK(S[i][j].is_zero());
            }
    }
}

TEST_CASE("whittaker pairing vector") {
    NSRParams ns{ExactScalar(make_rational(11, 3)), ExactScalar(make_rational(2, 7)), Sector::NS};
    NSREngine eng(ns);
    auto basis = nsr_basis(Sector::NS, kHalf);
    auto r = eng.whittaker_pairing_vector(Tower::None, kHalf);
    REQUIRE(basis.size() == 1);
    CHECK(r[0] == ExactScalar(1));

    NSRParams rp{ExactScalar(5), ExactScalar(make_rational(3, 7)), Sector::R};
    NSREngine reng(rp);
    auto rbasis = nsr_basis(Sector::R, 1);
    auto rv = reng.whittaker_pairing_vector(Tower::Plus, 1);
    for (size_t i = 0; i < rbasis.size(); ++i) {
        if (rbasis[i].partition == Partition{1} && rbasis[i].tower == Tower::Plus)
            CHECK(rv[i] == ExactScalar(make_rational(1, 2)));
        else if (!rbasis[i].gmodes.empty())
            CHECK(rv[i].is_zero());
        else if (rbasis[i].tower == Tower::Minus)
            CHECK(rv[i].is_zero());
    }
}

TEST_CASE("NS block leading coefficients") {
    NSRParams ns{ExactScalar(make_rational(11, 3)), ExactScalar(make_rational(2, 7)), Sector::NS};
    auto f = nsr_block_series(ns, Rational(2));
    CHECK(f.at(0) == ExactScalar(1));
    CHECK(f.at(kHalf) == (ExactScalar(2) * ns.delta()).inverse());
}

TEST_CASE("R block level one closed form") {
    NSRParams rp{ExactScalar(5), ExactScalar(make_rational(3, 7)), Sector::R};
    auto f = nsr_block_series(rp, Rational(2));
    ExactScalar d = rp.delta();
    ExactScalar num = ExactScalar(2) * d + ExactScalar(3) * rp.c / ExactScalar(8);
    ExactScalar den = ExactScalar(2) * d * num + ExactScalar(9) * rp.P * rp.P / ExactScalar(8);
    CHECK(f.at(Rational(1)) == num / (ExactScalar(4) * den));
}

TEST_CASE("R towers give identical norms") {
    NSRParams rp{ExactScalar(make_rational(17, 4)), ExactScalar(make_rational(5, 9)), Sector::R};
    NSREngine eng(rp);
    auto plus = eng.whittaker_norms(Tower::Plus, 3);
    auto minus = eng.whittaker_norms(Tower::Minus, 3);
    REQUIRE(plus.size() == minus.size());
    for (size_t i = 0; i < plus.size(); ++i) CHECK(plus[i] == minus[i]);
}

TEST_CASE("degenerate P reported") {
    // b = 1, Q = 2, P = Q/2: Delta^NS = 0 and the level-1/2 Gram is singular.
    NSRParams p{ExactScalar(9), ExactScalar(1), Sector::NS};
    NSREngine eng(p);
    CHECK_THROWS_AS(eng.whittaker_norms(Tower::None, 1), std::domain_error);
}

TEST_CASE("half-integer R levels are structurally empty") {
    CHECK_THROWS(nsr_basis(Sector::R, make_rational(3, 2)));
}
