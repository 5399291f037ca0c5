#include <doctest.h>

#include "mahlerkit/errors.hpp"
#include "mahlerkit/mahler.hpp"
#include "mahlerkit/series.hpp"

using namespace mahlerkit;

namespace {

const Recurrence fib({1, 1}, {1, 2});
const CompanionMatrix omega = CompanionMatrix::from(fib);

std::vector<Rational> qs(std::initializer_list<Rational> v) { return v; }

}  // namespace

TEST_SUITE("mahler") {

TEST_CASE("companion matrix shape") {
    CHECK(omega.entry(0, 0) == 1);
    CHECK(omega.entry(0, 1) == 1);
    CHECK(omega.entry(1, 0) == 1);
    CHECK(omega.entry(1, 1) == 0);
    CHECK(abs(omega.determinant()) == 1);
    CHECK_THROWS(CompanionMatrix({1, 0}));
}

TEST_CASE("action on points") {
    CHECK(act_on_point(omega, qs({2, 3})) == qs({6, 2}));
    CHECK(act_on_point(omega, qs({1, 1})) == qs({1, 1}));
    const BlockTransform t(omega, 2);
    CHECK(act_on_point(t, qs({2, 3, 5, 7})) == qs({6, 2, 35, 5}));
}

TEST_CASE("action on exponents follows the recurrence") {
    CHECK(act_on_exponents(omega, Exponent{2, 1}) == Exponent{3, 2});
    CHECK(act_on_exponents(omega, Exponent{0, 0}) == Exponent{0, 0});
    Exponent e{2, 1};
    for (int k = 0; k < 5; ++k) e = act_on_exponents(omega, e);
    CHECK(e == Exponent{21, 13});
}

TEST_CASE("monomial map") {
    const MonomialMap mono(fib);
    CHECK(mono(qs({Rational(1, 2), Rational(1, 3)})) == Rational(1, 12));
    CHECK(mono.as_poly(1, 4) == MultiPoly::monomial({0, 0, 2, 1}));
}

TEST_CASE("orbit") {
    const BlockTransform t(omega, 1);
    const auto o = orbit(t, qs({1, Rational(1, 2)}), 3, 128);
    REQUIRE(o.size() == 4);
    CHECK(o[0][1].contains(Rational(1, 2)));
    CHECK(o[1][0].contains(Rational(1, 2)));
    CHECK(o[1][1].contains(Rational(1)));
    CHECK(o[3][0].contains(Rational(1, 4)));
    CHECK(o[3][1].contains(Rational(1, 2)));
}

TEST_CASE("conditions on the orbit") {
    const BlockTransform t(omega, 1);
    const OrbitReport r = check_conditions(fib, t, admissible_point({Rational(1, 2)}, 2), 30);
    CHECK(!r.eigen_unity_witness);
    CHECK(r.condition_I);
    CHECK(std::abs(r.rho.mid_double() - 1.6180339887) < 1e-9);
    CHECK(r.fitted_c.mid_double() > 0);

    CHECK_THROWS_AS(check_conditions(Recurrence({2}, {1}), BlockTransform(CompanionMatrix({2}), 1), qs({Rational(1, 2)}), 10),
                    PreconditionError);

    const Recurrence pm({0, 1}, {1, 2});
    const OrbitReport q = check_conditions(pm, BlockTransform(CompanionMatrix::from(pm), 1), qs({1, Rational(1, 2)}), 10);
    CHECK(q.eigen_unity_witness);
    CHECK(!q.condition_I);
}

TEST_CASE("multiplicative independence") {
    CHECK(check_mult_indep(qs({Rational(1, 2), Rational(1, 3)})).independent);
    const auto d = check_mult_indep(qs({Rational(2, 3), Rational(4, 9)}));
    CHECK(!d.independent);
    CHECK(d.witness == std::vector<BigInt>{2, -1});
    CHECK(check_mult_indep(qs({Rational(1, 2)})).independent);
    CHECK(!check_mult_indep(qs({Rational(-1)})).independent);
}

}
