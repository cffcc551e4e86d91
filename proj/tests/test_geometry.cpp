#include <doctest.h>

#include "cps/geometry.hpp"
#include "helpers.hpp"

using namespace cps;
using namespace cps::testutil;

namespace {
Fixtures& fx() {
    static Fixtures f;
    return f;
}
} // namespace

TEST_SUITE("geometry") {

TEST_CASE("point keys round-trip and normalization is canonical") {
    auto K = fx().T->ext(2);
    std::uint64_t total = proj_space_size(*K, 2);
    CHECK(total == 21);
    for (std::uint64_t key = 0; key < total; ++key) {
        ProjPoint pt = point_from_key(K, 2, key);
        CHECK(point_key(pt, 2) == key);
        // rescaling gives the same normalized coordinates
        for (felem s = 1; s < K->size(); ++s) {
            std::vector<felem> scaled = pt.x;
            for (auto& c : scaled) c = K->mul(c, s);
            CHECK(normalize_point(K, scaled).x == pt.x);
        }
    }
}

TEST_CASE("count_points examples") {
    CHECK(count_points(fx().p2, 1) == 7);
    CHECK(count_points(drop_formula(fx().p2), 1) == 7);
    CHECK(count_points(fx().empty3, 1) == 0);
    CHECK(count_points(drop_formula(fx().empty3), 3) == 0);

    // the irrelevant presentation V(x, y, z) also cuts out the empty scheme
    auto kk = fx().T->base();
    Scheme irrelevant = ambient_space(fx().T, 2);
    irrelevant.gens = {make3(kk, {{{1, 0, 0}, 1}}), make3(kk, {{{0, 1, 0}, 1}}),
                       make3(kk, {{{0, 0, 1}, 1}})};
    irrelevant.assume_saturated = false;
    for (int e = 1; e <= 3; ++e) CHECK(count_points(irrelevant, e) == 0);

    // V(x^2+y^2+z^2) = (x+y+z)^2 over F_2 cuts out a line: 3 rational points
    auto k = fx().T->base();
    Scheme q = ambient_space(fx().T, 2);
    q.gens = {make3(k, {{{2, 0, 0}, 1}, {{0, 2, 0}, 1}, {{0, 0, 2}, 1}})};
    CHECK(count_points(q, 1) == 3);
    CHECK(count_points(q, 2) == 5);
}

TEST_CASE("registered formulas agree with enumeration") {
    for (const Scheme* s : {&fx().p2, &fx().p1, &fx().point, &fx().conic, &fx().two_lines, &fx().line})
        for (int e = 1; e <= 4; ++e)
            CHECK(count_points(*s, e) == count_points(drop_formula(*s), e));
}

TEST_CASE("parallel and serial counting agree") {
    for (const Scheme* s : {&fx().p2, &fx().conic, &fx().two_lines})
        for (int e = 1; e <= 4; ++e) {
            Scheme plain = drop_formula(*s);
            CHECK(count_points(plain, e) == count_points_serial(plain, e));
        }
}

TEST_CASE("closed point examples") {
    CHECK(closed_points(fx().p1, 2).size() == 1); // a_2 = (5-3)/2 = 1
    CHECK(closed_points(fx().p2, 1).size() == 7);
    CHECK(closed_points(fx().p2, 2).size() == 7);  // (21-7)/2
    CHECK(closed_points(fx().p2, 3).size() == 22); // (73-7)/3
}

TEST_CASE("Moebius consistency: sum over d|e of d*a_d equals N_e") {
    for (const Scheme* s : {&fx().p2, &fx().p1, &fx().point, &fx().conic, &fx().two_lines}) {
        Scheme plain = drop_formula(*s);
        for (int e = 1; e <= 4; ++e) {
            std::int64_t total = 0;
            for (int d = 1; d <= e; ++d) {
                if (e % d != 0) continue;
                total += static_cast<std::int64_t>(d) * closed_points(plain, d).size();
            }
            CHECK(total == count_points(plain, e));
        }
    }
}

TEST_CASE("removed points make quasi-projective complements") {
    Scheme s = fx().p2;
    auto origin = closed_points(fx().point, 1).at(0); // [0:0:1]
    s.removed = {origin};
    CHECK(count_points(s, 1) == 6);
    CHECK(count_points(drop_formula(s), 1) == 6);
    CHECK(count_points(drop_formula(s), 2) == 20);
    CHECK(closed_points(drop_formula(s), 1).size() == 6);
    CHECK(closed_points(drop_formula(s), 2).size() == 7);

    Scheme t = drop_formula(fx().p1);
    auto quad = closed_points(fx().p1, 2).at(0);
    t.removed = {quad};
    CHECK(count_points(t, 1) == 3);
    CHECK(count_points(t, 2) == 3);
    CHECK(closed_points(t, 2).empty());
}

TEST_CASE("smoothness of hypersurface sections at points") {
    auto k = fx().T->base();
    auto K1 = fx().T->ext(1);
    HomogPoly fermat = make3(k, {{{3, 0, 0}, 1}, {{0, 3, 0}, 1}, {{0, 0, 3}, 1}});
    ProjPoint p110 = normalize_point(K1, {1, 1, 0});
    ClosedPoint cp{p110, 1};
    CHECK(is_smooth_on_U_at(fx().p2, fermat, cp));

    // (x+y+z)^2: all partials vanish identically in char 2
    HomogPoly sq = make3(k, {{{2, 0, 0}, 1}, {{0, 2, 0}, 1}, {{0, 0, 2}, 1}});
    CHECK_FALSE(is_smooth_on_U_at(fx().p2, sq, cp));

    // f(P) != 0 is vacuously smooth
    HomogPoly offp = make3(k, {{{0, 0, 2}, 1}, {{2, 0, 0}, 1}}); // x^2+z^2 at [1:1:0] -> 1
    CHECK(is_smooth_on_U_at(fx().p2, offp, cp));

    ProjPoint off = normalize_point(K1, {0, 1, 1});
    CHECK_THROWS_AS(is_smooth_on_U_at(fx().conic, fermat, ClosedPoint{off, 1}), GeometryError);
}

TEST_CASE("smoothness is invariant under linear coordinate changes") {
    auto k = fx().T->base();
    SplitMix64 rng(2024);
    int tested = 0;
    for (int it = 0; it < 200 && tested < 60; ++it) {
        HomogPoly f = random_poly(k, 2, 3, rng);
        if (f.is_zero()) continue;
        auto M = random_invertible(k, 3, rng);
        auto Minv = matrix_inverse(k, M);
        int e = 1 + static_cast<int>(rng.below(2));
        auto pts = rational_points(fx().p2, e);
        const ProjPoint& P = pts[rng.below(pts.size())];
        bool lhs = smooth_at(fx().p2, f, P);
        bool rhs = smooth_at(fx().p2, hp_subst_linear(f, Minv), apply_matrix(M, P));
        CHECK(lhs == rhs);
        ++tested;

        // same with a nontrivial ambient scheme
        auto cpts = rational_points(fx().conic, e);
        const ProjPoint& Q = cpts[rng.below(cpts.size())];
        Scheme conicM = apply_matrix(Minv, fx().conic);
        bool clhs = smooth_at(fx().conic, f, Q);
        bool crhs = smooth_at(conicM, hp_subst_linear(f, Minv), apply_matrix(M, Q));
        CHECK(clhs == crhs);
    }
    CHECK(tested >= 50);
}

TEST_CASE("chart criterion matches the naive projective one when p does not divide d") {
    auto k = fx().T->base();
    const auto& emb = fx().T->embedding(1, 1);
    auto K1 = fx().T->ext(1);
    SplitMix64 rng(7);
    for (int it = 0; it < 300; ++it) {
        HomogPoly f = random_poly(k, 2, 3, rng); // d = 3 odd, p = 2
        if (f.is_zero()) continue;
        auto pts = rational_points(fx().p2, 1);
        const ProjPoint& P = pts[rng.below(pts.size())];
        bool naive_singular = hp_eval(f, *K1, emb, P.x.data()) == 0;
        for (int v = 0; v < 3; ++v)
            naive_singular =
                naive_singular && hp_eval(hp_partial(f, v), *K1, emb, P.x.data()) == 0;
        CHECK(smooth_at(fx().p2, f, P) == !naive_singular);
    }
}

TEST_CASE("verify_smooth_of_dim") {
    CHECK(verify_smooth_of_dim(fx().p2, 2, 2));
    CHECK(verify_smooth_of_dim(fx().conic, 1, 3));
    auto k = fx().T->base();
    Scheme dbl = ambient_space(fx().T, 2);
    dbl.gens = {make3(k, {{{2, 0, 0}, 1}, {{0, 2, 0}, 1}, {{0, 0, 2}, 1}})};
    CHECK_FALSE(verify_smooth_of_dim(dbl, 1, 2));
}

TEST_CASE("embedding dimension") {
    for (int deg : {1, 2, 3})
        for (const auto& cp : closed_points(fx().conic, deg)) CHECK(embedding_dimension(fx().conic, cp) == 1);

    auto node = closed_points(fx().point, 1).at(0); // [0:0:1] is the node of V(xy)
    CHECK(embedding_dimension(fx().two_lines, node) == 2);
    int smooth_pts = 0;
    for (const auto& cp : closed_points(fx().two_lines, 1)) {
        if (cp.rep.x == node.rep.x) continue;
        CHECK(embedding_dimension(fx().two_lines, cp) == 1);
        ++smooth_pts;
    }
    CHECK(smooth_pts == 4);

    CHECK(embedding_dimension(fx().point, closed_points(fx().point, 1).at(0)) == 0);
}

TEST_CASE("growth-based dimension estimates") {
    CHECK(estimate_dimension(fx().point, 4).dim == 0);
    CHECK(estimate_dimension(drop_formula(fx().point), 4).dim == 0);
    CHECK(estimate_dimension(fx().line, 4).dim == 1);
    CHECK(estimate_dimension(fx().conic, 4).dim == 1);
    CHECK(estimate_dimension(fx().p2, 4).dim == 2);
    CHECK(estimate_dimension(fx().empty3, 4).is_empty);
    CHECK(estimate_dimension(fx().empty3, 4).leq(0)); // dim(empty) = -inf
}

TEST_CASE("strata of the embedding dimension") {
    auto sc = stratify_by_embedding_dim(fx().conic, 3, 4);
    REQUIRE(sc.strata.size() == 1);
    CHECK(sc.strata[0].e == 1);
    CHECK(sc.strata[0].dim.dim == 1);
    CHECK(sc.max_e_plus_dim == 2);

    auto s2 = stratify_by_embedding_dim(fx().two_lines, 3, 4);
    REQUIRE(s2.strata.size() == 2);
    CHECK(s2.strata[0].e == 1);
    CHECK(s2.strata[0].dim.dim == 1);
    CHECK(s2.strata[1].e == 2);
    CHECK(s2.strata[1].dim.dim == 0);
    CHECK(s2.strata[1].points.size() == 1);
    CHECK(s2.max_e_plus_dim == 2);

    auto se = stratify_by_embedding_dim(fx().empty3, 3, 4);
    CHECK(se.strata.empty());
    CHECK_FALSE(se.max_e_plus_dim.has_value());
}

TEST_CASE("enumeration budget is enforced") {
    Scheme big = drop_formula(fx().p2);
    CHECK_THROWS_AS(count_points(big, 12), BudgetError);
}

} // TEST_SUITE
