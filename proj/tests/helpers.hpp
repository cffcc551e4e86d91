#pragma once

// shared builders for the standard test fixtures over F_2

#include <initializer_list>

#include "cps/geometry.hpp"
#include "cps/rng.hpp"

namespace cps::testutil {

inline HomogPoly make3(FieldPtr k, std::initializer_list<std::pair<std::vector<int>, felem>> terms) {
    int d = 0;
    for (const auto& t : terms) {
        int s = 0;
        for (int e : t.first) s += e;
        d = s;
    }
    HomogPoly f = hp_zero(k, 2, d);
    for (const auto& t : terms) {
        int idx = monos(2, d).index_of(t.first);
        f.c[idx] = k->add(f.c[idx], t.second);
    }
    return f;
}

inline HomogPoly random_poly(FieldPtr k, int n, int d, SplitMix64& rng) {
    HomogPoly f = hp_zero(k, n, d);
    for (auto& c : f.c) c = static_cast<felem>(rng.below(k->size()));
    return f;
}

struct Fixtures {
    TowerPtr T;
    Scheme p2, p1, empty3, point, conic, two_lines, line;

    Fixtures() : T(std::make_shared<FieldTower>(2, 1)) {
        auto k = T->base();
        p2 = ambient_space(T, 2);
        p2.formula = CountFormula{{1, 1, 1}};
        p2.zeta_tag = "P2";

        p1 = ambient_space(T, 1);
        p1.formula = CountFormula{{1, 1}};
        p1.zeta_tag = "P1";

        empty3 = ambient_space(T, 2); // V(1): the saturated presentation of the empty scheme
        empty3.gens = {make3(k, {{{0, 0, 0}, 1}})};
        empty3.formula = CountFormula{{}};

        point = ambient_space(T, 2); // {[0:0:1]}
        point.gens = {make3(k, {{{1, 0, 0}, 1}}), make3(k, {{{0, 1, 0}, 1}})};
        point.formula = CountFormula{{1}};

        conic = ambient_space(T, 2); // V(xz - y^2)
        conic.gens = {make3(k, {{{1, 0, 1}, 1}, {{0, 2, 0}, k->neg(1)}})};
        conic.formula = CountFormula{{1, 1}};
        conic.zeta_tag = "conic";

        two_lines = ambient_space(T, 2); // V(xy)
        two_lines.gens = {make3(k, {{{1, 1, 0}, 1}})};
        two_lines.formula = CountFormula{{1, 2}};
        two_lines.zeta_tag = "two_lines";

        line = ambient_space(T, 2); // V(x)
        line.gens = {make3(k, {{{1, 0, 0}, 1}})};
        line.formula = CountFormula{{1, 1}};
        line.zeta_tag = "line";
    }
};

inline Scheme drop_formula(Scheme s) {
    s.formula.reset();
    return s;
}

inline std::vector<std::vector<felem>> random_invertible(FieldPtr k, int n, SplitMix64& rng);

inline std::vector<std::vector<felem>> matrix_inverse(FieldPtr k,
                                                      std::vector<std::vector<felem>> M) {
    int n = static_cast<int>(M.size());
    for (int r = 0; r < n; ++r) {
        M[r].resize(2 * n, 0);
        M[r][n + r] = k->one();
    }
    for (int col = 0, row = 0; col < n; ++col) {
        int piv = -1;
        for (int r = row; r < n; ++r)
            if (M[r][col] != 0) { piv = r; break; }
        if (piv < 0) return {};
        std::swap(M[piv], M[row]);
        felem inv = k->inv(M[row][col]);
        for (auto& v : M[row]) v = k->mul(v, inv);
        for (int r = 0; r < n; ++r) {
            if (r == row || M[r][col] == 0) continue;
            felem f = M[r][col];
            for (int c = 0; c < 2 * n; ++c) M[r][c] = k->sub(M[r][c], k->mul(f, M[row][c]));
        }
        ++row;
    }
    std::vector<std::vector<felem>> inv(n, std::vector<felem>(n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) inv[r][c] = M[r][n + c];
    return inv;
}

inline std::vector<std::vector<felem>> random_invertible(FieldPtr k, int n, SplitMix64& rng) {
    for (;;) {
        std::vector<std::vector<felem>> M(n, std::vector<felem>(n));
        for (auto& row : M)
            for (auto& v : row) v = static_cast<felem>(rng.below(k->size()));
        if (!matrix_inverse(k, M).empty()) return M;
    }
}

inline ProjPoint apply_matrix(const std::vector<std::vector<felem>>& M, const ProjPoint& pt) {
    auto k = pt.K;
    int n = static_cast<int>(M.size());
    std::vector<felem> y(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) y[i] = k->add(y[i], k->mul(k->embed_base(M[i][j]), pt.x[j]));
    return normalize_point(k, std::move(y));
}

inline Scheme apply_matrix(const std::vector<std::vector<felem>>& Minv, const Scheme& S) {
    Scheme out = S;
    out.formula.reset();
    out.zeta_tag.reset();
    for (auto& g : out.gens) g = hp_subst_linear(g, Minv);
    for (auto& cp : out.removed) {
        // rep moves by the inverse substitution's inverse, i.e. by M itself
        std::vector<std::vector<felem>> M = matrix_inverse(S.tower->base(), Minv);
        cp.rep = apply_matrix(M, cp.rep);
    }
    return out;
}

} // namespace cps::testutil
