#include <doctest.h>

#include "mahlerkit/errors.hpp"
#include "mahlerkit/independence.hpp"

using namespace mahlerkit;

namespace {

const Recurrence fib({1, 1}, {1, 2});
const BlockTransform fib1(CompanionMatrix::from(fib), 1);

MultiPoly var(std::size_t arity, std::size_t i) { return MultiPoly::variable(arity, i); }
MultiPoly one(std::size_t arity) { return MultiPoly::constant(arity, 1); }
std::vector<UniPoly> unit_dens(std::size_t s) { return std::vector<UniPoly>(s, UniPoly{1}); }

}  // namespace

TEST_SUITE("independence") {

TEST_CASE("coefficient rank") {
    CHECK(rank_check_lemma38({}, 1, 1, 2).rank == 2);
    const auto r = rank_check_lemma38({3}, 0, 1, 2);
    CHECK(r.rank == 2);
    CHECK(r.degree == 2);
    CHECK(rank_check_lemma38({2}, 1, 2, 8).rank == 16);
    for (std::size_t J = 0; J <= 2; ++J)
        for (std::size_t M = 0; M <= 2; ++M)
            for (std::size_t s = 1; s <= 2; ++s) {
                std::vector<Rational> betas;
                for (std::size_t j = 1; j <= J; ++j) betas.emplace_back(BigInt(j + 1), BigInt(j));
                CHECK(rank_check_lemma38(betas, M, s, 0).full_rank);
            }
    CHECK_THROWS_AS(rank_check_lemma38({2, 2}, 0, 1, 2), PreconditionError);
    CHECK_THROWS_AS(rank_check_lemma38({0}, 0, 1, 2), PreconditionError);
}

TEST_CASE("functional equations") {
    const EvalContext ctx(fib, {Rational(1, 2), Rational(1, 3)}, 256);
    const std::vector<std::vector<Rational>> zs{{Rational(1, 2), Rational(1, 3), Rational(-1, 4), Rational(2, 5)},
                                                {Rational(1, 5), Rational(1, 2), Rational(1, 2), Rational(1, 7)}};
    for (const auto& r : verify_functional_equations(ctx, {2, Rational(-3, 2)}, {1, 2}, {1, 0}, zs)) {
        CHECK(r.residual.contains_zero());
        CHECK(r.residual.rad_below_pow2(-216));
    }
    const auto tele = verify_functional_equations(ctx, {}, {0, 0}, {0, 0}, zs);
    for (const auto& r : tele) CHECK(r.tag != "g_ij");

    // M(z_1) = 0: the product equation holds with both sides equal.
    const std::vector<std::vector<Rational>> zero{{0, Rational(1, 2), Rational(1, 3), Rational(1, 3)}};
    for (const auto& r : verify_functional_equations(ctx, {2}, {1, 1}, {0, 0}, zero))
        if (r.tag == "g_ij" && r.block == 0) CHECK(r.residual.contains_zero());

    const double lo = verify_functional_equations(ctx, {2}, {1, 0}, {1, 1}, zs)[0].residual.rad_double();
    const double hi =
        verify_functional_equations(ctx.with_prec(512), {2}, {1, 0}, {1, 1}, zs)[0].residual.rad_double();
    CHECK(hi < lo * 1e-60);
}

TEST_CASE("bounded-degree falsifier") {
    CHECK(!falsify_theorem37(fib, 1, 1, MultiPoly::constant(1, 3), unit_dens(1), 4).consistent);
    CHECK(falsify_theorem37(fib, 1, 1, MultiPoly(1), unit_dens(1), 4).consistent);

    const auto f = falsify_theorem37(fib, 2, 2, MultiPoly::constant(2, 5), unit_dens(2), 8);
    REQUIRE(f.consistent);
    CHECK(f.nullity == 0);
    CHECK(*f.solution == MultiPoly::constant(4, -5));

    CHECK(!falsify_theorem37(fib, 2, 1, var(2, 0) * var(2, 1), unit_dens(2), 8).consistent);

    const RationalFunction R(var(2, 0) * var(2, 1), (one(2) - var(2, 0)) * (one(2) + var(2, 1) * Rational(2)));
    CHECK(!falsify_theorem37(fib, 2, 1, R, 4).consistent);
    CHECK_THROWS_AS(falsify_theorem37(fib, 1, 1, MultiPoly(1), {UniPoly{0, 1}}, 2), PreconditionError);
}

TEST_CASE("gcd of pullbacks") {
    const BlockTransform t(CompanionMatrix::from(fib), 1);
    const MultiPoly z1 = var(2, 0), z2 = var(2, 1);
    const auto a = check_lemma41(z1 - one(2), z2 - one(2), t);
    CHECK(a.monomial);
    CHECK(a.I == Exponent{0, 0});
    const auto b = check_lemma41(z1, z2, t);
    CHECK(b.I == Exponent{1, 0});
    CHECK_THROWS_AS(check_lemma41(z1 * z2, z1, t), PreconditionError);
    CHECK(property_run_lemma41(t, 100, 41).counterexamples == 0);
}

TEST_CASE("orbit monomials are coprime") {
    CHECK(orbit_monomial_minus(fib, 0, 1) == MultiPoly::monomial({2, 1}) - one(2));
    CHECK(check_lemma42(fib, 0, 1, 1, 1));
    CHECK(check_lemma42(fib, 0, 2, 1, 5));
    CHECK_THROWS_AS(check_lemma42(fib, 1, 1, 1, 1), PreconditionError);
    CHECK(property_run_lemma42(fib, 100, 42).counterexamples == 0);
}

TEST_CASE("no short linear relation among the terms") {
    for (const auto& e : check_lemma43(fib, 5, 20)) CHECK(e.violation.has_value());
    const auto g = check_lemma43(Recurrence({2}, {1}), 1, 20);
    CHECK(g[0].c == Rational(2));
    CHECK(!g[0].violation);
    const auto z = check_lemma43(Recurrence({1, 1, 1}, {0, 0, 1}), 1, 10);
    CHECK(z[0].c == Rational(1));
    CHECK(z[0].violation.has_value());
}

TEST_CASE("divisibility forces monomials") {
    const MultiPoly m = MultiPoly::monomial({3, 1});
    const auto r = check_lemma44(m, fib1, pullback_degrees(m, fib1));
    CHECK(r.hypothesis);
    CHECK(r.conclusion);
    const MultiPoly p = var(2, 0) + one(2);
    const auto q = check_lemma44(p, fib1, Exponent{5, 5});
    CHECK(!q.hypothesis);
    CHECK(!q.counterexample());
    CHECK(property_run_lemma44(fib1, 200, 44).counterexamples == 0);
}

TEST_CASE("relation scan") {
    const EvalContext ctx(fib, {Rational(1, 2)}, 512);
    const Rational b(1, 3);
    const Jet g = eval_G_jet(ctx, 0, b, 1);
    const Ball h = eval_H_jet(ctx, 0, b, 0)[0];
    const auto r = relation_scan({g[0], h, g[1]}, 2, 1e10, 512);
    REQUIRE(r.found);
    CHECK(r.verdict == "found (certified)");
    // Basis: 1, G, H, G', G^2, G H, G G', H^2, H G', G'^2.
    std::vector<BigInt> expect(10, 0);
    expect[3] = 1;
    expect[5] = 1;
    CHECK(*r.found == expect);

    const EvalContext lo(fib, {Rational(1, 2)}, 64);
    CHECK_THROWS_AS(relation_scan({eval_H_jet(lo, 0, b, 0)[0]}, 2, 1e10, 512), NumericError);
}

TEST_CASE("random polynomials are reproducible") {
    std::mt19937_64 a(9), b(9);
    CHECK(random_poly(a, 3, 4, 3) == random_poly(b, 3, 4, 3));
}

}
