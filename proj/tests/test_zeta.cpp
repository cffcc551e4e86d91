#include <doctest.h>

#include <cmath>

#include "cps/zeta.hpp"
#include "helpers.hpp"

using namespace cps;
using namespace cps::testutil;

namespace {
Fixtures& fx() {
    static Fixtures f;
    return f;
}
} // namespace

TEST_SUITE("zeta") {

TEST_CASE("rational helpers") {
    CHECK(rat_mul(rat_make(2, 4), rat_make(2, 3)) == Rat64{1, 3});
    CHECK(rat_pow(rat_make(2, 1), -2) == Rat64{1, 4});
    CHECK(rat_str(rat_make(-6, 8)) == "-3/4");
}

TEST_CASE("closed point counts by Moebius inversion") {
    auto N = point_counts(fx().p2, 4);
    CHECK(N == std::vector<std::int64_t>{7, 21, 73, 273});
    auto a = closed_point_counts(N, 2);
    CHECK(a == std::vector<std::int64_t>{7, 7, 22, 63});
}

TEST_CASE("empty scheme gives the empty product") {
    auto z = zeta_best(fx().empty3, 3, 10);
    CHECK(z.value == 1.0);
    CHECK(z.exact);
}

TEST_CASE("closed forms") {
    // zeta_{P^1}(2) = 1/((1-q^-2)(1-q^-1)) = 8/3 over F_2
    auto zp1 = zeta_closed_form(fx().p1, 2);
    CHECK(zp1.exact);
    CHECK(zp1.rational == Rat64{8, 3});
    CHECK(zp1.value == doctest::Approx(8.0 / 3.0));

    // zeta_{P^2}(3)^{-1} = 21/64
    auto zp2 = zeta_closed_form(fx().p2, 3);
    CHECK(zp2.rational == Rat64{64, 21});

    // removing a rational point divides out one Euler factor: 3/8 inverse
    Scheme s = fx().p2;
    s.removed = {closed_points(fx().point, 1).at(0)};
    auto zrm = zeta_closed_form(s, 3);
    CHECK(zrm.rational == Rat64{8, 3});

    // union of two lines through a point: zeta_{P^1}^2 (1 - q^{-s})
    auto ztl = zeta_closed_form(fx().two_lines, 3);
    CHECK(ztl.rational == rat_mul(rat_mul(Rat64{64, 21}, Rat64{4, 3}), Rat64{7, 8}));
    CHECK(ztl.value == doctest::Approx(128.0 / 63.0 * (21.0 / 16.0) * 0.875 / 1.3125 / 1));
}

TEST_CASE("two-lines closed form against the truncated product") {
    auto closed = zeta_closed_form(fx().two_lines, 3);
    auto trunc = zeta_truncated(fx().two_lines, 3, 14);
    CHECK(std::abs(trunc.value - closed.value) < trunc.tail_bound);
    CHECK(trunc.tail_bound < 1e-4);
}

TEST_CASE("truncation sandwich") {
    for (const Scheme* s : {&fx().p1, &fx().p2, &fx().two_lines, &fx().conic}) {
        int spar = s->n == 1 ? 2 : 3;
        for (int E : {6, 10}) {
            auto a = zeta_truncated(*s, spar, E);
            auto b = zeta_truncated(*s, spar, E + 1);
            CHECK(b.value >= a.value);
            CHECK(std::abs(b.value - a.value) < a.tail_bound);
            auto closed = zeta_closed_form(*s, spar);
            CHECK(std::abs(a.value - closed.value) < a.tail_bound);
        }
    }
}

TEST_CASE("multiplicativity over a finite decomposition") {
    // zeta_X = zeta_{X-W} zeta_W for W a closed point set, numerically
    Scheme x = fx().p1;
    auto w2 = closed_points(fx().p1, 2).at(0);
    Scheme xw = fx().p1;
    xw.removed = {w2};
    int s = 2, E = 12;
    auto zx = zeta_truncated(x, s, E);
    auto zxw = zeta_truncated(xw, s, E);
    double zw = 1.0 / (1.0 - std::pow(2.0, -2.0 * s));
    CHECK(std::abs(zx.value - zxw.value * zw) < 1e-9);
}

TEST_CASE("finite schemes get exact finite products") {
    auto z = zeta_best(fx().point, 3, 12);
    CHECK(z.exact);
    CHECK(z.rational == Rat64{8, 7}); // (1 - 2^{-3})^{-1}
}

TEST_CASE("divergence is an error") {
    CHECK_THROWS_AS(zeta_truncated(fx().p2, 2, 8), ZetaError);
    CHECK_THROWS_AS(zeta_closed_form(fx().p1, 1), ZetaError);
    CHECK_THROWS_AS(zeta_closed_form(fx().two_lines, 1), ZetaError);
}

TEST_CASE("exact truncated arithmetic is reported") {
    auto z = zeta_truncated(fx().p1, 2, 8);
    CHECK(!z.exact_repr.empty());
    CHECK(z.truncation_degree == 8);
    CHECK(z.tail_bound > 0);
}

} // TEST_SUITE
