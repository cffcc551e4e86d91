#include "cps/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

#include "cps/linalg.hpp"

namespace cps {

ProjPoint normalize_point(FieldPtr K, std::vector<felem> coords) {
    int lead = -1;
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i] != 0) { lead = static_cast<int>(i); break; }
    if (lead < 0) throw GeometryError("all coordinates zero");
    if (coords[lead] != K->one()) {
        felem inv = K->inv(coords[lead]);
        for (auto& c : coords) c = K->mul(c, inv);
    }
    ProjPoint pt;
    pt.K = std::move(K);
    pt.x = std::move(coords);
    pt.chart = lead;
    return pt;
}

Scheme ambient_space(TowerPtr tower, int n) {
    Scheme s;
    s.tower = std::move(tower);
    s.n = n;
    return s;
}

Scheme intersect(const Scheme& A, const Scheme& B) {
    Scheme s = A;
    s.gens.insert(s.gens.end(), B.gens.begin(), B.gens.end());
    for (const auto& r : B.removed) s.removed.push_back(r);
    s.formula.reset();
    s.zeta_tag.reset();
    return s;
}

std::uint64_t proj_space_size(const Field& K, int n) {
    unsigned __int128 total = 0, pw = 1;
    for (int j = 0; j <= n; ++j) {
        total += pw;
        pw *= K.size();
        if (total > (static_cast<unsigned __int128>(1) << 62))
            throw BudgetError("projective space too large to enumerate");
    }
    return static_cast<std::uint64_t>(total);
}

std::uint64_t point_key(const ProjPoint& pt, int n) {
    std::uint64_t Q = pt.K->size();
    std::uint64_t key = 0, chart_size = 1;
    // offset of the chart: points with leading 1 before position `chart`
    for (int t = 0; t < n - pt.chart; ++t) chart_size *= Q;
    std::uint64_t offset = 0, pw = chart_size;
    for (int j = pt.chart - 1; j >= 0; --j) {
        pw *= Q;
        offset += pw;
    }
    // base-Q digits of the free coordinates, most significant first
    for (int i = pt.chart + 1; i <= n; ++i) key = key * Q + pt.x[i];
    return offset + key;
}

ProjPoint point_from_key(const FieldPtr& K, int n, std::uint64_t key) {
    std::uint64_t Q = K->size();
    int chart = 0;
    std::uint64_t chart_size = 1;
    for (int t = 0; t < n; ++t) chart_size *= Q;
    while (key >= chart_size) {
        key -= chart_size;
        chart_size /= Q;
        ++chart;
    }
    ProjPoint pt;
    pt.K = K;
    pt.chart = chart;
    pt.x.assign(n + 1, 0);
    pt.x[chart] = K->one();
    for (int i = n; i > chart; --i) {
        pt.x[i] = static_cast<felem>(key % Q);
        key /= Q;
    }
    return pt;
}

bool on_scheme_locus(const Scheme& S, const ProjPoint& pt) {
    int e = pt.K->e();
    const auto& emb = S.tower->embedding(1, e);
    for (const auto& g : S.gens)
        if (hp_eval(g, *pt.K, emb, pt.x.data()) != 0) return false;
    return true;
}

std::vector<std::uint64_t> removed_keys(const Scheme& S, int e) {
    std::vector<std::uint64_t> keys;
    for (const auto& cp : S.removed) {
        if (e % cp.degree != 0) continue;
        const auto& emb = S.tower->embedding(cp.degree, e);
        auto K = S.tower->ext(e);
        std::vector<felem> coords(S.n + 1);
        for (int i = 0; i <= S.n; ++i) coords[i] = emb[cp.rep.x[i]];
        ProjPoint pt = normalize_point(K, coords);
        for (int it = 0; it < cp.degree; ++it) {
            keys.push_back(point_key(pt, S.n));
            pt = frobenius_point(pt);
        }
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

bool on_scheme(const Scheme& S, const ProjPoint& pt) {
    if (!on_scheme_locus(S, pt)) return false;
    if (S.removed.empty()) return true;
    auto keys = removed_keys(S, pt.K->e());
    return !std::binary_search(keys.begin(), keys.end(), point_key(pt, S.n));
}

ProjPoint frobenius_point(const ProjPoint& pt) {
    ProjPoint out = pt;
    for (auto& c : out.x) c = pt.K->frobenius_q(c);
    return out; // leading 1 is fixed, so normalization is preserved
}

namespace {

std::int64_t formula_count(const Scheme& S, int e) {
    unsigned __int128 qe = 1;
    for (int i = 0; i < e; ++i) qe *= S.tower->q();
    __int128 total = 0, pw = 1;
    for (long long c : S.formula->coef) {
        total += static_cast<__int128>(c) * pw;
        pw *= qe;
    }
    for (const auto& cp : S.removed)
        if (e % cp.degree == 0) total -= cp.degree;
    if (total < 0 || total > (static_cast<__int128>(1) << 62))
        throw BudgetError("formula count out of range");
    return static_cast<std::int64_t>(total);
}

} // namespace

std::int64_t count_points(const Scheme& S, int e, std::uint64_t budget) {
    if (S.formula) return formula_count(S, e);
    auto K = S.tower->ext(e);
    std::uint64_t total = proj_space_size(*K, S.n);
    if (total > budget) throw BudgetError("enumeration budget exceeded");
    const auto& emb = S.tower->embedding(1, e);
    auto rm = removed_keys(S, e);
    std::int64_t count = 0;
    const std::int64_t tot = static_cast<std::int64_t>(total);
#pragma omp parallel for reduction(+ : count) schedule(static)
    for (std::int64_t key = 0; key < tot; ++key) {
        ProjPoint pt = point_from_key(K, S.n, static_cast<std::uint64_t>(key));
        bool on = true;
        for (const auto& g : S.gens)
            if (hp_eval(g, *K, emb, pt.x.data()) != 0) { on = false; break; }
        if (on && !std::binary_search(rm.begin(), rm.end(), static_cast<std::uint64_t>(key)))
            ++count;
    }
    return count;
}

std::int64_t count_points_serial(const Scheme& S, int e, std::uint64_t budget) {
    if (S.formula) return formula_count(S, e);
    auto K = S.tower->ext(e);
    std::uint64_t total = proj_space_size(*K, S.n);
    if (total > budget) throw BudgetError("enumeration budget exceeded");
    const auto& emb = S.tower->embedding(1, e);
    auto rm = removed_keys(S, e);
    std::int64_t count = 0;
    for (std::uint64_t key = 0; key < total; ++key) {
        ProjPoint pt = point_from_key(K, S.n, key);
        bool on = true;
        for (const auto& g : S.gens)
            if (hp_eval(g, *K, emb, pt.x.data()) != 0) { on = false; break; }
        if (on && !std::binary_search(rm.begin(), rm.end(), key)) ++count;
    }
    return count;
}

std::vector<ProjPoint> rational_points(const Scheme& S, int e, std::uint64_t budget) {
    auto K = S.tower->ext(e);
    std::uint64_t total = proj_space_size(*K, S.n);
    if (total > budget) throw BudgetError("enumeration budget exceeded");
    auto rm = removed_keys(S, e);
    std::vector<ProjPoint> pts;
    for (std::uint64_t key = 0; key < total; ++key) {
        ProjPoint pt = point_from_key(K, S.n, key);
        if (!on_scheme_locus(S, pt)) continue;
        if (std::binary_search(rm.begin(), rm.end(), key)) continue;
        pts.push_back(std::move(pt));
    }
    return pts;
}

std::vector<ClosedPoint> closed_points(const Scheme& S, int degree, std::uint64_t budget) {
    auto K = S.tower->ext(degree);
    std::uint64_t total = proj_space_size(*K, S.n);
    if (total > budget) throw BudgetError("enumeration budget exceeded");
    auto rm = removed_keys(S, degree);
    std::vector<bool> visited(total, false);
    std::vector<ClosedPoint> out;
    for (std::uint64_t key = 0; key < total; ++key) {
        if (visited[key]) continue;
        ProjPoint pt = point_from_key(K, S.n, key);
        if (!on_scheme_locus(S, pt)) continue;
        // walk the orbit; `key` is its smallest member since we scan upward
        int orbit = 0;
        ProjPoint cur = pt;
        do {
            visited[point_key(cur, S.n)] = true;
            cur = frobenius_point(cur);
            ++orbit;
        } while (point_key(cur, S.n) != key);
        if (orbit != degree) continue;
        if (std::binary_search(rm.begin(), rm.end(), key)) continue;
        out.push_back(ClosedPoint{std::move(pt), degree});
    }
    return out;
}

std::vector<std::vector<felem>> jacobian_at(const Scheme& S, const ProjPoint& pt) {
    int e = pt.K->e();
    const auto& emb = S.tower->embedding(1, e);
    std::vector<std::vector<felem>> rows;
    rows.reserve(S.gens.size());
    for (const auto& g : S.gens) {
        std::vector<felem> row;
        row.reserve(S.n);
        for (int i = 0; i <= S.n; ++i) {
            if (i == pt.chart) continue;
            HomogPoly dg = hp_partial(g, i);
            row.push_back(hp_eval(dg, *pt.K, emb, pt.x.data()));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<felem> gradient_at(const HomogPoly& f, const ProjPoint& pt) {
    std::vector<felem> emb(f.k->size());
    for (std::uint64_t c = 0; c < f.k->size(); ++c)
        emb[c] = pt.K->embed_base(static_cast<felem>(c));
    std::vector<felem> row;
    row.reserve(f.n);
    for (int i = 0; i <= f.n; ++i) {
        if (i == pt.chart) continue;
        row.push_back(hp_eval(hp_partial(f, i), *pt.K, emb, pt.x.data()));
    }
    return row;
}

bool smooth_at(const Scheme& U, const HomogPoly& f, const ProjPoint& pt) {
    int e = pt.K->e();
    const auto& emb = U.tower->embedding(1, e);
    if (hp_eval(f, *pt.K, emb, pt.x.data()) != 0) return true;
    std::vector<felem> grad;
    grad.reserve(U.n);
    for (int i = 0; i <= U.n; ++i) {
        if (i == pt.chart) continue;
        grad.push_back(hp_eval(hp_partial(f, i), *pt.K, emb, pt.x.data()));
    }
    auto jac = jacobian_at(U, pt);
    auto R = rref(*pt.K, std::move(jac));
    return !in_rowspace(*pt.K, R, std::move(grad));
}

bool is_smooth_on_U_at(const Scheme& U, const HomogPoly& f, const ClosedPoint& P) {
    if (!on_scheme(U, P.rep)) throw GeometryError("point not on U");
    return smooth_at(U, f, P.rep);
}

bool verify_smooth_of_dim(const Scheme& S, int m, int degree_bound, std::uint64_t budget) {
    for (int deg = 1; deg <= degree_bound; ++deg) {
        for (const auto& cp : closed_points(S, deg, budget)) {
            int rank = matrix_rank(*cp.rep.K, jacobian_at(S, cp.rep));
            if (rank != S.n - m) return false;
        }
    }
    return true;
}

int embedding_dimension(const Scheme& V, const ClosedPoint& P) {
    if (!on_scheme(V, P.rep)) throw GeometryError("point not on V");
    return V.n - matrix_rank(*P.rep.K, jacobian_at(V, P.rep));
}

DimEstimate estimate_dimension_counts(const std::vector<std::int64_t>& counts,
                                      std::uint64_t q, double C) {
    bool any = false;
    for (auto c : counts)
        if (c > 0) any = true;
    if (!any) return DimEstimate{true, 0};
    for (int D = 0; D <= 64; ++D) {
        bool ok = true;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            double bound = C;
            for (std::size_t t = 0; t < (i + 1) * static_cast<std::size_t>(D); ++t)
                bound *= static_cast<double>(q);
            if (static_cast<double>(counts[i]) > bound) { ok = false; break; }
        }
        if (ok) return DimEstimate{false, D};
    }
    throw GeometryError("dimension estimate failed to stabilize");
}

namespace {

double default_growth_constant(const Scheme& S) {
    double prod = 1;
    for (const auto& g : S.gens) prod *= std::max(1, g.d);
    return 4.0 * std::max(1.0, prod);
}

} // namespace

DimEstimate estimate_dimension(const Scheme& S, int ext_bound, double C, std::uint64_t budget) {
    if (C < 0) C = default_growth_constant(S);
    std::vector<std::int64_t> counts;
    for (int e = 1; e <= ext_bound; ++e) counts.push_back(count_points(S, e, budget));
    return estimate_dimension_counts(counts, S.tower->q(), C);
}

StrataDecomposition stratify_by_embedding_dim(const Scheme& V, int degree_bound, int ext_bound,
                                              std::uint64_t budget) {
    std::map<int, Stratum> strata;
    for (int deg = 1; deg <= degree_bound; ++deg) {
        for (auto& cp : closed_points(V, deg, budget)) {
            int e = V.n - matrix_rank(*cp.rep.K, jacobian_at(V, cp.rep));
            auto& st = strata[e];
            st.e = e;
            st.points.push_back(std::move(cp));
        }
    }
    // growth of the pointwise loci, one count vector per stratum
    std::map<int, std::vector<std::int64_t>> counts;
    for (int e = 1; e <= ext_bound; ++e) {
        for (const auto& pt : rational_points(V, e, budget)) {
            int ed = V.n - matrix_rank(*pt.K, jacobian_at(V, pt));
            auto& vec = counts[ed];
            if (vec.size() < static_cast<std::size_t>(e)) vec.resize(ext_bound, 0);
            ++vec[e - 1];
        }
    }
    double C = default_growth_constant(V);
    StrataDecomposition out;
    for (auto& [ed, vec] : counts) {
        auto& st = strata[ed];
        st.e = ed;
        st.dim = estimate_dimension_counts(vec, V.tower->q(), C);
    }
    std::optional<int> best;
    for (auto& [ed, st] : strata) {
        if (st.dim.is_empty && !st.points.empty()) st.dim = DimEstimate{false, 0};
        if (!st.dim.is_empty) {
            int v = st.e + st.dim.dim;
            if (!best || v > *best) best = v;
        }
        out.strata.push_back(std::move(st));
    }
    out.max_e_plus_dim = best;
    return out;
}

std::string point_to_string(const ProjPoint& pt) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < pt.x.size(); ++i) os << (i ? ":" : "") << pt.K->to_string(pt.x[i]);
    os << "]";
    return os.str();
}

} // namespace cps
