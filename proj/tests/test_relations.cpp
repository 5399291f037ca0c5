#include <doctest.h>

#include <random>

#include "mahlerkit/relations.hpp"

using namespace mahlerkit;

namespace {

const Recurrence fib({1, 1}, {1, 2});

MultiPoly var(std::size_t arity, std::size_t i) { return MultiPoly::variable(arity, i); }

}  // namespace

TEST_SUITE("relations") {

TEST_CASE("Bell-type families") {
    const BellFamily f = bell_family(3);
    const MultiPoly x0 = var(3, 0), x1 = var(3, 1), x2 = var(3, 2);
    CHECK(f.P[0] == MultiPoly::constant(3, 1));
    CHECK(f.P[1] == -x0);
    CHECK(f.P[2] == x0 * x0 - x1);
    CHECK(f.P[3] == -(x0 * x0 * x0) + x0 * x1 * Rational(3) - x2);
    const MultiPoly y1 = var(3, 0), y2 = var(3, 1), y3 = var(3, 2);
    CHECK(f.Q[0] == MultiPoly::constant(3, 1));
    CHECK(f.Q[1] == y1);
    CHECK(f.Q[2] == y1 * y1 * Rational(2) + y2);
    CHECK(f.Q[2]({-1, -1, 0}) == Rational(1));
    CHECK(f.Q[3] == y1 * y1 * y1 * Rational(6) + y1 * y2 * Rational(6) + y3);
}

TEST_CASE("B and C matrices") {
    const Rational c(3, 7);
    const auto B = build_B(std::vector<Rational>{c});
    CHECK(B(0, 0) == Rational(1));
    CHECK(B(1, 0) == -c);
    CHECK(B(1, 1) == Rational(1));
    CHECK(build_B(std::vector<Rational>(4, Rational(0))).is_identity());

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
    std::vector<Rational> h;
    for (int k = 0; k < 6; ++k) h.emplace_back(BigInt(num(rng)), BigInt(den(rng)));
    const auto Bh = build_B(h);
    // Y_j = -g^{(j)}/g evaluated through B's first column.
    std::vector<Rational> y;
    for (std::size_t j = 1; j <= 6; ++j) y.push_back(-Bh(j, 0));
    CHECK((build_C(y) * Bh).is_identity());
}

TEST_CASE("triangular matrix validation") {
    RationalMatrix m(2, 2);
    m << 1, 1, 0, 1;
    CHECK_THROWS_AS(UnitLowerTriangular<Rational>(m, true), PreconditionError);
    m << 2, 0, 1, 1;
    CHECK_THROWS_AS(UnitLowerTriangular<Rational>(m, true), PreconditionError);
    CHECK_NOTHROW(UnitLowerTriangular<Rational>(m, false));
}

TEST_CASE("A matrix") {
    const Rational r1(2, 3), r2(-5, 4);
    const auto A = build_A({{r1}, {r2}}, 1);
    CHECK(A.size() == 4);
    CHECK(A(3, 0) == r1 * r2);
    CHECK(A(2, 0) == r1);
    CHECK(A(1, 0) == r2);
    CHECK(build_A({{Rational(0), Rational(0)}, {Rational(0), Rational(0)}}, 2).is_identity());
    const auto A1 = build_A({{r1, Rational(7)}}, 2);
    CHECK(A1(2, 0) == Rational(7));
    CHECK(A1(2, 1) == Rational(2) * r1);
}

TEST_CASE("L certificates") {
    const EvalContext ctx(fib, {Rational(1, 2)}, 256);
    const auto id = build_L(ctx, 0, 0, 3);
    CHECK(id.n == 0);
    CHECK(id.L.is_identity());

    const std::size_t k0 = select_shift(ctx, {4});
    CHECK(k0 == 2);
    const auto cert = build_L(ctx.with_shift(k0), 0, 4, 2);
    CHECK(cert.n == 1);
    for (std::size_t m = 0; m <= 2; ++m) CHECK(cert.L(m, m) == Rational(BigInt(m + 1)) * cert.p * cert.q);
    CHECK_THROWS_AS(build_L(ctx, 0, 4, 2), PreconditionError);
}

TEST_CASE("L reproduces the derivatives") {
    const EvalContext ctx(fib, {Rational(1, 2)}, 256);
    const auto r = verify_L(ctx.with_shift(2), 0, 4, 3);
    CHECK(r.ok(-200));
    const auto z = verify_L(ctx, 0, 0, 3);
    for (const auto& b : z.residuals) CHECK(b.is_exact_zero());
}

TEST_CASE("theta decomposition") {
    const EvalContext ctx(fib, {Rational(1, 2), Rational(1, 3)}, 256);
    const std::vector<Rational> beta{4, 0};
    CHECK(verify_theta_decomposition(ctx.with_shift(select_shift(ctx, beta)), beta, 2).ok(-200));
    const auto exact = verify_theta_decomposition(ctx, {Rational(1, 3), Rational(1, 5)}, 2);
    for (const auto& b : exact.residuals) CHECK(b.is_exact_zero());

    const EvalContext one(fib, {Rational(1, 2)}, 256);
    CHECK(verify_theta_decomposition(one.with_shift(2), {4}, 2).ok(-200));
}

}
