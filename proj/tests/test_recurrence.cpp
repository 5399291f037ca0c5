#include <doctest.h>

#include "mahlerkit/recurrence.hpp"

using namespace mahlerkit;

namespace {

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

const Recurrence fib({1, 1}, {1, 2});
const Recurrence doubling({2}, {1});

}  // namespace

TEST_SUITE("recurrence") {

TEST_CASE("extend") {
    CHECK(fib.extend(5) == ints({1, 2, 3, 5, 8, 13}));
    CHECK(doubling.extend(4) == ints({1, 2, 4, 8, 16}));
    CHECK(Recurrence({0, 2}, {1, 1}).extend(5) == ints({1, 1, 2, 2, 4, 4}));
    const auto long_run = fib.extend(200);
    CHECK(fib.extend(60) == std::vector<BigInt>(long_run.begin(), long_run.begin() + 61));
}

TEST_CASE("constructor rejects degenerate input") {
    CHECK_THROWS(Recurrence({1, 0}, {1, 1}));
    CHECK_THROWS(Recurrence({1, 1}, {0, 0}));
    CHECK_THROWS(Recurrence({1, -1}, {1, 1}));
    CHECK_THROWS(Recurrence({}, {}));
}

TEST_CASE("characteristic polynomial") {
    CHECK(char_poly(fib) == UniPoly({-1, -1, 1}));
    CHECK(char_poly(doubling) == UniPoly({-2, 1}));
    CHECK(char_poly(Recurrence({0, 2}, {1, 1})) == UniPoly({-2, 0, 1}));
}

TEST_CASE("minimal order") {
    CHECK(minimal_order(fib) == 2);
    CHECK(minimal_order(doubling) == 1);
    CHECK(minimal_order(Recurrence({0, 4}, {1, 2})) == 1);
}

TEST_CASE("nondegeneracy verdicts") {
    const NdReport f = check_nd(fib);
    CHECK(f.nd_ok);
    CHECK(f.phi_at_one == Rational(-1));
    CHECK(f.phi_at_minus_one == Rational(1));
    CHECK(!f.ratio_unity_witness);
    CHECK(f.minimal_order == 2);
    CHECK(f.squarefree);

    const NdReport p = check_nd(Recurrence({0, 1}, {1, 2}));
    CHECK(!p.nd_ok);
    CHECK(p.phi_at_one.is_zero());

    const NdReport d = check_nd(doubling);
    CHECK(!d.nd_ok);
    CHECK(d.geometric);

    // X^2 - 2: roots +-sqrt 2 have ratio -1.
    const NdReport r = check_nd(Recurrence({0, 2}, {1, 1}));
    CHECK(!r.nd_ok);
    CHECK(r.ratio_unity_witness == std::optional<std::uint64_t>(2));

    CHECK(!check_nd(Recurrence({0, 4}, {1, 2})).nd_ok);
}

TEST_CASE("strict growth index") {
    CHECK(strict_growth_index(fib, 64) == std::optional<std::size_t>(0));
    CHECK(strict_growth_index(doubling, 64) == std::optional<std::size_t>(0));
    CHECK(!strict_growth_index(Recurrence({0, 2}, {1, 1}), 64));

    const Recurrence slow({1, 0, 1}, {1, 0, 0});
    const auto K0 = strict_growth_index(slow, 64);
    REQUIRE(K0);
    const auto R = slow.extend(*K0 + 10);
    for (std::size_t k = *K0; k < *K0 + 9; ++k) CHECK(R[k + 1] > R[k]);
}

}
