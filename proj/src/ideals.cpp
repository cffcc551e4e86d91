#include "cps/ideals.hpp"

#include <algorithm>

namespace cps {

HomogPoly GradedBasis::poly(int i, const TowerPtr& tower) const {
    HomogPoly f = hp_zero(tower->base(), n, d);
    f.c = rows[i];
    return f;
}

namespace {

GradedBasis from_rows(const Scheme& Z, int d, std::vector<std::vector<felem>> rows,
                      BasisMethod method, int eval_bound) {
    auto R = rref(*Z.tower->base(), std::move(rows));
    GradedBasis b;
    b.k = Z.tower->base();
    b.n = Z.n;
    b.d = d;
    b.rows = std::move(R.rows);
    b.method = method;
    b.eval_degree_bound = eval_bound;
    return b;
}

GradedBasis piece_multiples(const Scheme& Z, int d) {
    if (!Z.assume_saturated)
        throw DataError("generator-multiples needs a saturated presentation");
    const auto& k = Z.tower->base();
    const auto& td = monos(Z.n, d);
    std::vector<std::vector<felem>> rows;
    for (const auto& g : Z.gens) {
        if (g.d > d) continue;
        const auto& tm = monos(Z.n, d - g.d);
        const auto& tg = monos(Z.n, g.d);
        for (const auto& me : tm.expo) {
            std::vector<felem> row(td.size(), 0);
            for (std::size_t j = 0; j < g.c.size(); ++j) {
                if (g.c[j] == 0) continue;
                std::vector<int> e(Z.n + 1);
                for (int v = 0; v <= Z.n; ++v) e[v] = me[v] + tg.expo[j][v];
                row[td.index_of(e)] = g.c[j];
            }
            rows.push_back(std::move(row));
        }
    }
    return from_rows(Z, d, std::move(rows), BasisMethod::generator_multiples, 0);
}

GradedBasis piece_evaluation(const Scheme& Z, int d, int B, std::uint64_t budget) {
    if (!Z.assume_reduced) throw DataError("point-evaluation needs a reduced fixture");
    const auto& k = Z.tower->base();
    const auto& td = monos(Z.n, d);
    std::vector<std::vector<felem>> rows; // one row per F_q-coordinate of each residue field
    for (int deg = 1; deg <= B; ++deg) {
        for (const auto& cp : closed_points(Z, deg, budget)) {
            auto K = cp.rep.K;
            const auto& emb = Z.tower->embedding(1, deg);
            std::vector<felem> vals(td.size());
            std::vector<felem> coords(deg);
            std::vector<std::vector<felem>> block(deg, std::vector<felem>(td.size()));
            for (std::size_t j = 0; j < td.size(); ++j) {
                felem v = K->one();
                for (int var = 0; var <= Z.n; ++var)
                    for (int rep = 0; rep < td.expo[j][var]; ++rep) v = K->mul(v, cp.rep.x[var]);
                K->coords_over_base(v, coords.data());
                for (int t = 0; t < deg; ++t) block[t][j] = coords[t];
            }
            (void)emb;
            for (auto& r : block) rows.push_back(std::move(r));
        }
    }
    auto ker = kernel_basis(*k, rows, td.size());
    return from_rows(Z, d, std::move(ker), BasisMethod::point_evaluation, B);
}

} // namespace

GradedBasis graded_piece(const Scheme& Z, int d, BasisMethod method, int eval_bound,
                         std::uint64_t budget) {
    if (method == BasisMethod::generator_multiples) return piece_multiples(Z, d);
    return piece_evaluation(Z, d, eval_bound < 0 ? d + 1 : eval_bound, budget);
}

GradedBasis graded_piece_certified(const Scheme& Z, int d, std::uint64_t budget) {
    GradedBasis a = graded_piece(Z, d, BasisMethod::generator_multiples, -1, budget);
    GradedBasis b = graded_piece(Z, d, BasisMethod::point_evaluation, -1, budget);
    if (a.rows != b.rows)
        throw DataError("graded piece methods disagree: presentation not saturated?");
    return a;
}

int find_c(const Scheme& Z, int d_max, std::uint64_t budget) {
    const auto& k = Z.tower->base();
    std::vector<GradedBasis> bases;
    for (int d = 0; d <= d_max + 1; ++d)
        bases.push_back(graded_piece(Z, d, BasisMethod::generator_multiples, -1, budget));
    std::vector<bool> ok(d_max + 1, false);
    for (int d = 0; d <= d_max; ++d) {
        const auto& td = monos(Z.n, d);
        const auto& tn = monos(Z.n, d + 1);
        std::vector<std::vector<felem>> rows;
        for (const auto& brow : bases[d].rows) {
            for (int var = 0; var <= Z.n; ++var) {
                std::vector<felem> row(tn.size(), 0);
                for (std::size_t j = 0; j < brow.size(); ++j) {
                    if (brow[j] == 0) continue;
                    std::vector<int> e = td.expo[j];
                    e[var] += 1;
                    row[tn.index_of(e)] = brow[j];
                }
                rows.push_back(std::move(row));
            }
        }
        ok[d] = matrix_rank(*k, rows) == bases[d + 1].dim();
    }
    int c = -1;
    for (int d = d_max; d >= 0 && ok[d]; --d) c = d;
    if (c < 0) throw DataError("no degree c with S_1 I_d = I_{d+1} in range");
    return c;
}

void validate_local_conditions(const Scheme& Z, const LocalConditions& Y) {
    for (const auto& cp : Y.components)
        if (on_scheme_locus(Z, cp.rep)) throw DataError("Y meets Z");
    for (const auto& tup : Y.admissible) {
        if (tup.size() != Y.components.size()) throw DataError("T tuple arity mismatch");
        for (std::size_t i = 0; i < tup.size(); ++i)
            if (tup[i] >= Y.components[i].rep.K->size()) throw DataError("T value out of range");
    }
}

unsigned long long h0_size(const LocalConditions& Y, std::uint64_t q) {
    unsigned long long total = 1;
    for (const auto& cp : Y.components) {
        for (int i = 0; i < cp.degree; ++i) {
            if (total > (1ULL << 62) / q) throw DataError("H^0(Y) too large");
            total *= q;
        }
    }
    return total;
}

std::vector<felem> restrict_to_Y(const HomogPoly& f, const LocalConditions& Y) {
    std::vector<felem> out;
    out.reserve(Y.components.size());
    for (const auto& cp : Y.components) {
        auto K = cp.rep.K;
        std::vector<felem> emb(f.k->size());
        for (std::uint64_t c = 0; c < f.k->size(); ++c)
            emb[c] = K->embed_base(static_cast<felem>(c));
        out.push_back(hp_eval(f, *K, emb, cp.rep.x.data()));
    }
    return out;
}

std::vector<felem> jet_coords(const Scheme& U, const ClosedPoint& P, const HomogPoly& f) {
    auto K = P.rep.K;
    int deg = P.degree;
    const auto& emb = U.tower->embedding(1, deg);
    felem value = hp_eval(f, *K, emb, P.rep.x.data());
    std::vector<felem> grad;
    for (int i = 0; i <= U.n; ++i) {
        if (i == P.rep.chart) continue;
        grad.push_back(hp_eval(hp_partial(f, i), *K, emb, P.rep.x.data()));
    }
    auto tangent = kernel_basis(*K, jacobian_at(U, P.rep), U.n);
    std::vector<felem> jets;
    jets.push_back(value);
    for (const auto& w : tangent) {
        felem dot = 0;
        for (int i = 0; i < U.n; ++i) dot = K->add(dot, K->mul(grad[i], w[i]));
        jets.push_back(dot);
    }
    std::vector<felem> out(jets.size() * deg);
    for (std::size_t t = 0; t < jets.size(); ++t)
        K->coords_over_base(jets[t], out.data() + t * deg);
    return out;
}

unsigned long long jet_image_size(const Scheme& Z, const Scheme& U, const ClosedPoint& P, int d,
                                  int certification_degree, std::uint64_t budget) {
    if (certification_degree >= 0 && d < certification_degree)
        throw DataError("degree below certification degree");
    GradedBasis I = graded_piece(Z, d, BasisMethod::generator_multiples, -1, budget);
    std::vector<std::vector<felem>> rows;
    rows.reserve(I.dim());
    for (int i = 0; i < I.dim(); ++i) rows.push_back(jet_coords(U, P, I.poly(i, Z.tower)));
    int rank = rows.empty() ? 0 : matrix_rank(*Z.tower->base(), std::move(rows));
    unsigned long long size = 1;
    for (int i = 0; i < rank; ++i) {
        if (size > (1ULL << 62) / Z.tower->q()) throw DataError("jet image too large");
        size *= Z.tower->q();
    }
    return size;
}

} // namespace cps
