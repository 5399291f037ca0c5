#include <doctest.h>

#include "mahlerkit/errors.hpp"
#include "mahlerkit/mahler.hpp"
#include "mahlerkit/series.hpp"
#include "test_util.hpp"

using namespace mahlerkit;
using testutil::encloses;

// Reference digits come from tests/oracle/series_oracle.py (partial sums and
// products in mpmath at 60 digits).
namespace ref {
constexpr const char* H0 = "0.910278797207865891794043024471063144483423924595278772593292";
constexpr const char* G1 = "0.316590607758373583844576016128538900488566938370147715383843";
constexpr const char* H00 = "0.199203270347865761942537557317540200976604735722310048654671";
constexpr const char* lambert = "0.160278797207865891794043024471063144483423924595278772593292";
constexpr const char* dG4 = "0.107613239046896521959932686582025800276615751492609156410134";
constexpr const char* Theta40 = "-0.0119570265607662802177702985091139778085128612769565729344594";
constexpr const char* Theta40_10 = "-0.0194365451389482037925545925963384380582858411266635617006849";
constexpr const char* Xi00 = "0.0189795058716041872075091709952495674813246672298965494571921";
constexpr const char* H2_third = "0.238536168219762759691275956256974897899124350275323023474122";
}  // namespace ref

namespace {

const Recurrence fib({1, 1}, {1, 2});
const Rational half(1, 2), third(1, 3);

}  // namespace

TEST_SUITE("series") {

TEST_CASE("zero profile") {
    const EvalContext ctx(fib, {half}, 128);
    const auto z4 = zero_profile(ctx, {Rational(4)});
    CHECK(z4.counts == std::vector<std::size_t>{1});
    CHECK(z4.hit_indices[0] == std::vector<std::size_t>{1});
    CHECK(zero_profile(ctx, {Rational(0)}).counts[0] == 0);
    CHECK(zero_profile(ctx, {Rational(5)}).counts[0] == 0);
    CHECK(zero_profile(ctx, {Rational(8)}).counts[0] == 1);
}

TEST_CASE("single-coordinate jets") {
    const EvalContext ctx(fib, {half}, 128);
    const Jet g0 = eval_G_jet(ctx, 0, 0, 2);
    CHECK(g0[0].is_exact());
    CHECK(g0[0].contains(Rational(1)));

    const Jet g1 = eval_G_jet(ctx, 0, 1, 0);
    CHECK(encloses(g1[0], ref::G1, 1e-36));
    CHECK(g1[0].rad_double() < 1e-30);

    const Jet g4 = eval_G_jet(ctx, 0, 4, 1);
    CHECK(g4[0].is_exact_zero());
    CHECK(encloses(g4[1], ref::dG4, 1e-36));

    CHECK(encloses(eval_H_jet(ctx, 0, 0, 0)[0], ref::H0, 1e-36));
    CHECK(encloses(eval_H_jet(ctx, 0, third, 2)[2], ref::H2_third, 1e-36));
    CHECK_THROWS_AS(eval_H_jet(ctx, 0, 4, 0), PreconditionError);

    const Ball h = eval_H_jet(ctx, 0, Rational(-1, 2), 0)[0];
    CHECK(render(h, 20).mid_im == "0");
}

TEST_CASE("multi-variable functions") {
    const EvalContext ctx(fib, {half, third}, 128);
    CHECK(encloses(eval_H_multi(ctx, {0, 0}, {0, 0}), ref::H00, 1e-36));
    CHECK_THROWS_AS(eval_H_multi(ctx, {4, 0}, {0, 0}), PreconditionError);

    CHECK(encloses(eval_Theta(ctx, {4, 0}, {0, 0}), ref::Theta40, 1e-36));
    CHECK(encloses(eval_Theta(ctx, {4, 0}, {1, 0}), ref::Theta40_10, 1e-36));
    CHECK(encloses(eval_Xi(ctx, {0, 0}, {0, 0}), ref::Xi00, 1e-30));

    const Ball xi = eval_Xi(ctx, {third, Rational(1, 5)}, {1, 0});
    const Ball th = eval_Theta(ctx, {third, Rational(1, 5)}, {2, 1});
    CHECK(mpfr_equal_p(xi.mid().get(), th.mid().get()));
    CHECK(mpfr_equal_p(xi.rad().get(), th.rad().get()));
}

TEST_CASE("reductions to one coordinate") {
    const EvalContext ctx(fib, {half}, 128);
    const Rational b(1, 5);
    const Ball theta = eval_Theta(ctx, {b}, {0});
    const Ball prod = eval_G_jet(ctx, 0, b, 0)[0] * eval_H_jet(ctx, 0, b, 0)[0];
    CHECK(theta.overlaps(prod));
    const Ball h2 = eval_H_multi(ctx, {b}, {2});
    CHECK(h2.overlaps(eval_H_jet(ctx, 0, b, 2)[2] * Ball(2L, 128)));
}

TEST_CASE("lambert series") {
    const EvalContext ctx(fib, {half}, 128);
    const std::vector<Ball> z{Ball(half, 192), Ball(half, 192)};
    CHECK(encloses(eval_lambert_general(ctx, z, {0}, {0}), ref::lambert, 1e-36));

    // At the point (1, a) the general series is H with the derivative weights removed.
    const EvalContext c2(fib, {half, third}, 128);
    std::vector<Ball> alpha;
    for (const auto& q : admissible_point({half, third}, 2)) alpha.emplace_back(q, 192);
    const Ball lam = eval_lambert_general(c2, alpha, {third, Rational(1, 5)}, {1, 0});
    const Ball h = eval_H_multi(c2, {third, Rational(1, 5)}, {1, 0});
    CHECK(lam.overlaps(h));

    std::vector<Ball> outside{Ball(Rational(3, 2), 192), Ball(half, 192)};
    CHECK_THROWS_AS(eval_lambert_general(ctx, outside, {0}, {0}), PreconditionError);
}

TEST_CASE("context validation") {
    CHECK_THROWS_AS(EvalContext(fib, {Rational(2, 3), Rational(4, 9)}, 128), PreconditionError);
    CHECK_THROWS_AS(EvalContext(fib, {Rational(3, 2)}, 128), PreconditionError);
    CHECK_THROWS_AS(EvalContext(Recurrence({2}, {1}), {half}, 128), PreconditionError);
}

TEST_CASE("precision refinement shrinks radii") {
    const EvalContext lo(fib, {half}, 128);
    const EvalContext hi = lo.with_prec(256);
    const Ball a = eval_H_jet(lo, 0, third, 1)[1];
    const Ball b = eval_H_jet(hi, 0, third, 1)[1];
    CHECK(b.rad_double() < a.rad_double() * 1e-30);
    CHECK(a.overlaps(b));
}

TEST_CASE("multi-index ranking") {
    const MultiIndex orders{2, 1};
    CHECK(multi_index_count(orders) == 6);
    CHECK(multi_index_rank({1, 0}, orders) == 2);
    CHECK(multi_index_unrank(5, orders) == MultiIndex{2, 1});
}

}
