#include <doctest.h>

#include <random>

#include "mahlerkit/cyclotomic.hpp"
#include "mahlerkit/linalg.hpp"
#include "mahlerkit/lll.hpp"
#include "mahlerkit/multipoly.hpp"
#include "mahlerkit/unipoly.hpp"

using namespace mahlerkit;

namespace {

MultiPoly z(std::size_t arity, std::size_t i) { return MultiPoly::variable(arity, i); }

MultiPoly one(std::size_t arity) { return MultiPoly::constant(arity, Rational(1)); }

}  // namespace

TEST_SUITE("exactalg") {

TEST_CASE("rational normalization and parsing") {
    CHECK(Rational(BigInt(6), BigInt(-4)).str() == "-3/2");
    CHECK(Rational::parse(" 10/4 ") == Rational(5, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK_THROWS(Rational::parse("x"));
    CHECK(pow(Rational(2, 3), -2L) == Rational(9, 4));
}

TEST_CASE("univariate gcd") {
    const UniPoly a{-1, 0, 1}, b{1, -2, 1};
    CHECK(poly_gcd(a, b) == UniPoly({-1, 1}));
    CHECK(poly_gcd(UniPoly({2, 4}), UniPoly()) == UniPoly({Rational(1, 2), 1}));
}

TEST_CASE("multivariate gcd") {
    const MultiPoly x = z(2, 0), y = z(2, 1);
    const MultiPoly a = x * x * y - one(2), b = x * x * x * y * y - one(2);
    CHECK(poly_gcd(a, b) == one(2));

    const MultiPoly f = x + y * Rational(2), g = x * y - one(2), h = x - y;
    const MultiPoly d = poly_gcd(f * g, f * h);
    CHECK(divides(d, f * g));
    CHECK(divides(d, f * h));
    CHECK(divides(f, d));
    CHECK(d.total_degree() == 1);
    CHECK(poly_gcd(a, MultiPoly(2)) == a.normalized());
    CHECK_THROWS(poly_gcd(a, z(3, 0)));
}

TEST_CASE("resultants") {
    CHECK(abs(resultant(UniPoly({-2, 1}), UniPoly({-3, 1}))) == Rational(1));
    CHECK(resultant(UniPoly({-1, 0, 1}), UniPoly({-1, 1})).is_zero());

    // Res_y(Phi(y), Phi(xy)) for Phi = X^2 - X - 1 vanishes at the root ratios.
    const MultiPoly x = z(2, 0), y = z(2, 1);
    const MultiPoly phi_y = y * y - y - one(2);
    const MultiPoly phi_xy = x * x * y * y - x * y - one(2);
    const UniPoly psi = resultant_eliminate(phi_y, phi_xy, 1);
    CHECK(psi.degree() == 4);
    CHECK(psi(Rational(1)).is_zero());
    const UniPoly expect = pow(UniPoly({-1, 1}), 2) * UniPoly({1, 3, 1});
    CHECK(psi.monic() == expect);
}

TEST_CASE("resultant vanishes iff gcd is nonconstant") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> c(-3, 3);
    for (int t = 0; t < 40; ++t) {
        UniPoly a{c(rng), c(rng), 1}, b{c(rng), 1};
        const bool common = poly_gcd(a, b).degree() > 0;
        CHECK(resultant(a, b).is_zero() == common);
    }
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic(1) == UniPoly({-1, 1}));
    CHECK(cyclotomic(4) == UniPoly({1, 0, 1}));
    CHECK(cyclotomic(12) == UniPoly({1, 0, -1, 0, 1}));
    CHECK_THROWS(cyclotomic(0));
    for (std::uint64_t N = 1; N <= 64; ++N) {
        UniPoly prod{1};
        for (std::uint64_t d = 1; d <= N; ++d)
            if (N % d == 0) prod *= cyclotomic(d);
        CHECK(prod == UniPoly::monomial(1, N) - UniPoly{1});
    }
}

TEST_CASE("root of unity detection") {
    CHECK(has_root_of_unity_root(UniPoly({1, 0, 1})) == std::optional<std::uint64_t>(4));
    CHECK(!has_root_of_unity_root(UniPoly({-1, -1, 1})));
    const UniPoly p = UniPoly({-1, 1}) * UniPoly({1, -3, 1});
    CHECK(!has_root_of_unity_root(p, true));
    CHECK(has_root_of_unity_root(p) == std::optional<std::uint64_t>(1));
    CHECK_THROWS(has_root_of_unity_root(UniPoly()));
}

TEST_CASE("exact rank") {
    RationalMatrix m(2, 2);
    m << 1, 0, 0, 1;
    CHECK(exact_rank(m) == 2);
    m << 1, 2, 2, 4;
    CHECK(exact_rank(m) == 1);
    m << 1, 0, 1, 3;
    CHECK(exact_rank(m) == 2);

    RationalMatrix r(3, 4);
    r << 1, 2, 3, 4, 2, 4, 6, 8, 0, 1, Rational(1, 2), 7;
    RationalMatrix scaled = r;
    scaled.row(0) *= Rational(-5, 3);
    scaled.row(1).swap(scaled.row(2));
    CHECK(exact_rank(r) == 2);
    CHECK(exact_rank(scaled) == 2);
}

TEST_CASE("LLL reduction") {
    IntLatticeBasis id{{{1, 0}, {0, 1}}};
    CHECK(lll_reduce(id, Rational(3, 4)) == id);

    IntLatticeBasis b{{{1, 0}, {10, 1}}};
    const auto r = lll_reduce(b, Rational(3, 4));
    CHECK(squared_norm(r.rows[0]) <= 2);
    CHECK(is_lll_reduced(r, Rational(3, 4)));
    CHECK_THROWS(lll_reduce(IntLatticeBasis{{{1, 2}, {2, 4}}}, Rational(3, 4)));

    // (1, phi, phi^2) at 60 digits: the short vector is +-(1, 1, -1).
    const BigInt S("1" + std::string(60, '0'));
    const BigInt phi("1618033988749894848204586834365638117720309179805762862135");
    const BigInt phi2("2618033988749894848204586834365638117720309179805762862135");
    IntLatticeBasis g{{{1, 0, 0, S}, {0, 1, 0, phi * 1000}, {0, 0, 1, phi2 * 1000}}};
    const auto red = lll_reduce(g, Rational(99, 100));
    const auto& v = red.rows[0];
    CHECK(abs(v[0]) == 1);
    CHECK(v[1] == v[0]);
    CHECK(v[2] == -v[0]);
}

TEST_CASE("sparse system") {
    SparseSystem sys(2);
    sys.add_row({{0, 1}, {1, 1}}, 3);
    sys.add_row({{0, 1}, {1, -1}}, 1);
    const auto sol = sys.solve();
    CHECK(sol.consistent);
    CHECK(sol.particular[0] == Rational(2));
    CHECK(sol.particular[1] == Rational(1));

    SparseSystem bad(1);
    bad.add_row({{0, 1}}, 1);
    bad.add_row({{0, 2}}, 1);
    CHECK(!bad.solve().consistent);
}

TEST_CASE("rational functions normalize") {
    const MultiPoly x = z(1, 0);
    const RationalFunction f(x * x - one(1), x - one(1));
    CHECK(f.den().is_constant());
    CHECK(f.num().total_degree() == 1);
    CHECK(f({Rational(3)}) == Rational(4));
    CHECK_THROWS(RationalFunction(x, MultiPoly(1)));
}

}
