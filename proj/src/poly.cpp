#include "cps/poly.hpp"

#include <cassert>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace cps {

namespace {

void gen_monomials(int n, int d, int pos, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
    if (pos == n) {
        cur[pos] = d;
        out.push_back(cur);
        return;
    }
    for (int v = d; v >= 0; --v) {
        cur[pos] = v;
        gen_monomials(n, d - v, pos + 1, cur, out);
    }
}

std::map<std::pair<int, int>, MonomialTable>& mono_cache() {
    static std::map<std::pair<int, int>, MonomialTable> cache;
    return cache;
}
std::mutex mono_mu;

} // namespace

const MonomialTable& monos(int n, int d) {
    std::lock_guard<std::mutex> lock(mono_mu);
    auto key = std::make_pair(n, d);
    auto& cache = mono_cache();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    MonomialTable t;
    t.n = n;
    t.d = d;
    std::vector<int> cur(n + 1, 0);
    gen_monomials(n, d, 0, cur, t.expo);
    for (std::size_t i = 0; i < t.expo.size(); ++i) t.rank[t.expo[i]] = static_cast<int>(i);
    return cache.emplace(key, std::move(t)).first->second;
}

int MonomialTable::index_of(const std::vector<int>& e) const {
    auto it = rank.find(e);
    if (it == rank.end()) throw std::invalid_argument("monomial not of this degree");
    return it->second;
}

bool HomogPoly::is_zero() const {
    for (felem v : c)
        if (v != 0) return false;
    return true;
}

HomogPoly hp_zero(FieldPtr k, int n, int d) {
    HomogPoly f;
    f.k = std::move(k);
    f.n = n;
    f.d = d;
    f.c.assign(monos(n, d).size(), 0);
    return f;
}

HomogPoly hp_monomial(FieldPtr k, int n, const std::vector<int>& expo, felem coeff) {
    int d = 0;
    for (int e : expo) d += e;
    HomogPoly f = hp_zero(std::move(k), n, d);
    f.c[monos(n, d).index_of(expo)] = coeff;
    return f;
}

HomogPoly hp_add(const HomogPoly& a, const HomogPoly& b) {
    assert(a.n == b.n && a.d == b.d);
    HomogPoly r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.k->add(a.c[i], b.c[i]);
    return r;
}

HomogPoly hp_scale(const HomogPoly& a, felem s) {
    HomogPoly r = a;
    for (auto& v : r.c) v = a.k->mul(v, s);
    return r;
}

HomogPoly hp_mul(const HomogPoly& a, const HomogPoly& b) {
    assert(a.n == b.n);
    const auto& ta = monos(a.n, a.d);
    const auto& tb = monos(b.n, b.d);
    HomogPoly r = hp_zero(a.k, a.n, a.d + b.d);
    const auto& tr = monos(r.n, r.d);
    std::vector<int> e(a.n + 1);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j] == 0) continue;
            for (int v = 0; v <= a.n; ++v) e[v] = ta.expo[i][v] + tb.expo[j][v];
            int idx = tr.index_of(e);
            r.c[idx] = a.k->add(r.c[idx], a.k->mul(a.c[i], b.c[j]));
        }
    }
    return r;
}

HomogPoly hp_partial(const HomogPoly& f, int var) {
    const auto& t = monos(f.n, f.d);
    if (f.d == 0) return hp_zero(f.k, f.n, 0);
    HomogPoly r = hp_zero(f.k, f.n, f.d - 1);
    const auto& tr = monos(f.n, f.d - 1);
    std::vector<int> e(f.n + 1);
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i] == 0) continue;
        int ev = t.expo[i][var];
        if (ev == 0) continue;
        felem coeff = f.k->mul(f.c[i], f.k->from_int(ev));
        if (coeff == 0) continue;
        e = t.expo[i];
        e[var] -= 1;
        int idx = tr.index_of(e);
        r.c[idx] = f.k->add(r.c[idx], coeff);
    }
    return r;
}

HomogPoly hp_subst_linear(const HomogPoly& f, const std::vector<std::vector<felem>>& M) {
    const auto& t = monos(f.n, f.d);
    HomogPoly r = hp_zero(f.k, f.n, f.d);
    std::vector<HomogPoly> lin;
    for (int i = 0; i <= f.n; ++i) {
        HomogPoly L = hp_zero(f.k, f.n, 1);
        for (int j = 0; j <= f.n; ++j) {
            std::vector<int> e(f.n + 1, 0);
            e[j] = 1;
            L.c[monos(f.n, 1).index_of(e)] = M[i][j];
        }
        lin.push_back(std::move(L));
    }
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i] == 0) continue;
        HomogPoly term = hp_monomial(f.k, f.n, std::vector<int>(f.n + 1, 0), f.c[i]);
        for (int v = 0; v <= f.n; ++v)
            for (int rep = 0; rep < t.expo[i][v]; ++rep) term = hp_mul(term, lin[v]);
        r = hp_add(r, term);
    }
    return r;
}

felem hp_eval(const HomogPoly& f, const Field& E, const std::vector<felem>& emb,
              const felem* coords) {
    const auto& t = monos(f.n, f.d);
    felem acc = 0;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i] == 0) continue;
        felem m = emb[f.c[i]];
        for (int v = 0; v <= f.n && m != 0; ++v)
            for (int rep = 0; rep < t.expo[i][v]; ++rep) m = E.mul(m, coords[v]);
        acc = E.add(acc, m);
    }
    return acc;
}

std::string hp_to_string(const HomogPoly& f) {
    static const char* names3 = "xyz";
    const auto& t = monos(f.n, f.d);
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        bool coeff_shown = false;
        if (f.c[i] != 1 || f.d == 0) {
            os << f.k->to_string(f.c[i]);
            coeff_shown = true;
        }
        for (int v = 0; v <= f.n; ++v) {
            int e = t.expo[i][v];
            if (e == 0) continue;
            if (coeff_shown) os << "*";
            coeff_shown = true;
            if (f.n == 2)
                os << names3[v];
            else
                os << "x" << v;
            if (e > 1) os << "^" << e;
        }
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------------------

int up_deg(const UPoly& f) { return static_cast<int>(f.c.size()) - 1; }

void up_trim(UPoly& f) {
    while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
}

bool up_is_zero(const UPoly& f) { return f.c.empty(); }

UPoly up_add(const UPoly& a, const UPoly& b) {
    UPoly r = a;
    if (b.c.size() > r.c.size()) r.c.resize(b.c.size(), 0);
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = a.k->add(r.c[i], b.c[i]);
    up_trim(r);
    return r;
}

UPoly up_sub(const UPoly& a, const UPoly& b) {
    UPoly r = a;
    if (b.c.size() > r.c.size()) r.c.resize(b.c.size(), 0);
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = a.k->sub(r.c[i], b.c[i]);
    up_trim(r);
    return r;
}

UPoly up_mul(const UPoly& a, const UPoly& b) {
    UPoly r{a.k, {}};
    if (up_is_zero(a) || up_is_zero(b)) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = a.k->add(r.c[i + j], a.k->mul(a.c[i], b.c[j]));
    }
    return r;
}

UPoly up_scale(const UPoly& a, felem s) {
    UPoly r = a;
    for (auto& v : r.c) v = a.k->mul(v, s);
    up_trim(r);
    return r;
}

UPoly up_divrem(const UPoly& a, const UPoly& b, UPoly* rem) {
    if (up_is_zero(b)) throw std::invalid_argument("division by zero polynomial");
    UPoly r = a, q{a.k, {}};
    up_trim(r);
    int db = up_deg(b);
    felem lcinv = a.k->inv(b.c.back());
    if (up_deg(r) >= db) q.c.assign(up_deg(r) - db + 1, 0);
    while (up_deg(r) >= db) {
        felem f = a.k->mul(r.c.back(), lcinv);
        int shift = up_deg(r) - db;
        q.c[shift] = f;
        for (int i = 0; i <= db; ++i)
            r.c[i + shift] = a.k->sub(r.c[i + shift], a.k->mul(f, b.c[i]));
        up_trim(r);
    }
    if (rem) *rem = std::move(r);
    up_trim(q);
    return q;
}

UPoly up_monic(const UPoly& a) {
    if (up_is_zero(a)) return a;
    return up_scale(a, a.k->inv(a.c.back()));
}

UPoly up_gcd(UPoly a, UPoly b) {
    up_trim(a);
    up_trim(b);
    while (!up_is_zero(b)) {
        UPoly r;
        up_divrem(a, b, &r);
        a = std::move(b);
        b = std::move(r);
    }
    return up_monic(a);
}

// ---------------------------------------------------------------------------

bool bh_is_zero(const BivH& a) { return up_is_zero(a.u); }
bool bh_is_const(const BivH& a) { return !bh_is_zero(a) && a.deg == 0; }

BivH bh_const(FieldPtr k, felem v) {
    BivH b{k, 0, UPoly{k, {}}};
    if (v != 0) b.u.c = {v};
    return b;
}

BivH bh_mul(const BivH& a, const BivH& b) { return BivH{a.k, a.deg + b.deg, up_mul(a.u, b.u)}; }

BivH bh_add(const BivH& a, const BivH& b) {
    assert(bh_is_zero(a) || bh_is_zero(b) || a.deg == b.deg);
    return BivH{a.k, bh_is_zero(a) ? b.deg : a.deg, up_add(a.u, b.u)};
}

BivH bh_neg(const BivH& a) { return BivH{a.k, a.deg, up_scale(a.u, a.k->neg(a.k->one()))}; }

BivH bh_sub(const BivH& a, const BivH& b) { return bh_add(a, bh_neg(b)); }

BivH bh_gcd(const BivH& a, const BivH& b) {
    if (bh_is_zero(a)) {
        BivH r = b;
        r.u = up_monic(r.u);
        return r;
    }
    if (bh_is_zero(b)) {
        BivH r = a;
        r.u = up_monic(r.u);
        return r;
    }
    // z-multiplicity of a nonzero homogeneous bivariate is deg - deg(u)
    int zva = a.deg - up_deg(a.u);
    int zvb = b.deg - up_deg(b.u);
    UPoly g = up_gcd(a.u, b.u);
    int zv = std::min(zva, zvb);
    return BivH{a.k, up_deg(g) + zv, std::move(g)};
}

BivH bh_divexact(const BivH& a, const BivH& b) {
    if (bh_is_zero(a)) return BivH{a.k, a.deg - b.deg, UPoly{a.k, {}}};
    if (a.deg - up_deg(a.u) < b.deg - up_deg(b.u))
        throw std::logic_error("bh_divexact: not divisible (z power)");
    UPoly rem;
    UPoly q = up_divrem(a.u, b.u, &rem);
    if (!up_is_zero(rem)) throw std::logic_error("bh_divexact: not divisible");
    return BivH{a.k, a.deg - b.deg, std::move(q)};
}

// ---------------------------------------------------------------------------

TrivH th_zero(FieldPtr k) { return TrivH{std::move(k), -1, {}}; }

bool th_is_zero(const TrivH& t) { return t.deg < 0; }

int th_xdeg(const TrivH& t) {
    for (int j = static_cast<int>(t.cx.size()) - 1; j >= 0; --j)
        if (!bh_is_zero(t.cx[j])) return j;
    return -1;
}

namespace {

TrivH th_make(FieldPtr k, int deg) {
    TrivH t{k, deg, {}};
    t.cx.reserve(deg + 1);
    for (int j = 0; j <= deg; ++j) t.cx.push_back(BivH{k, deg - j, UPoly{k, {}}});
    return t;
}

TrivH th_trim(TrivH t) {
    if (th_xdeg(t) < 0) return th_zero(t.k);
    return t;
}

TrivH th_mul_biv(const TrivH& t, const BivH& b) {
    if (th_is_zero(t) || bh_is_zero(b)) return th_zero(t.k);
    TrivH r = th_make(t.k, t.deg + b.deg);
    for (int j = 0; j < static_cast<int>(t.cx.size()); ++j)
        if (!bh_is_zero(t.cx[j])) r.cx[j] = bh_mul(t.cx[j], b);
    return r;
}

TrivH th_neg(TrivH t) {
    for (auto& biv : t.cx) biv = bh_neg(biv);
    return t;
}

TrivH th_sub(const TrivH& a, const TrivH& b) {
    if (th_is_zero(b)) return a;
    if (th_is_zero(a)) return th_neg(b);
    assert(a.deg == b.deg);
    TrivH r = a;
    for (int j = 0; j < static_cast<int>(b.cx.size()); ++j) r.cx[j] = bh_sub(r.cx[j], b.cx[j]);
    return th_trim(std::move(r));
}

TrivH th_shift_x(const TrivH& t, int s) {
    if (th_is_zero(t) || s == 0) return t;
    TrivH r = th_make(t.k, t.deg + s);
    for (int j = 0; j < static_cast<int>(t.cx.size()); ++j)
        if (!bh_is_zero(t.cx[j])) r.cx[j + s] = t.cx[j];
    return r;
}

BivH th_content(const TrivH& t) {
    BivH g{t.k, 0, UPoly{t.k, {}}};
    for (const auto& biv : t.cx)
        if (!bh_is_zero(biv)) g = bh_gcd(g, biv);
    return g;
}

TrivH th_div_biv(const TrivH& t, const BivH& b) {
    if (th_is_zero(t)) return t;
    TrivH r = th_make(t.k, t.deg - b.deg);
    for (int j = 0; j < static_cast<int>(t.cx.size()); ++j)
        if (!bh_is_zero(t.cx[j])) r.cx[j] = bh_divexact(t.cx[j], b);
    return r;
}

TrivH th_primitive(const TrivH& t) {
    if (th_is_zero(t)) return t;
    return th_div_biv(t, th_content(t));
}

TrivH th_prem(TrivH a, const TrivH& b) {
    int db = th_xdeg(b);
    const BivH lcb = b.cx[db];
    while (!th_is_zero(a) && th_xdeg(a) >= db) {
        int da = th_xdeg(a);
        const BivH lca = a.cx[da];
        a = th_sub(th_mul_biv(a, lcb), th_mul_biv(th_shift_x(b, da - db), lca));
    }
    return a;
}

} // namespace

TrivH th_normalize(TrivH t) {
    if (th_is_zero(t)) return t;
    int dx = th_xdeg(t);
    felem lc = t.cx[dx].u.c.back();
    if (lc == t.k->one()) return t;
    felem s = t.k->inv(lc);
    for (auto& biv : t.cx) biv.u = up_scale(biv.u, s);
    return t;
}

TrivH th_from(const HomogPoly& f) {
    if (f.n != 2) throw std::invalid_argument("th_from needs 3 variables");
    if (f.is_zero()) return th_zero(f.k);
    const auto& t = monos(2, f.d);
    TrivH r = th_make(f.k, f.d);
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i] == 0) continue;
        int ex = t.expo[i][0], ey = t.expo[i][1];
        auto& biv = r.cx[ex];
        if (static_cast<int>(biv.u.c.size()) <= ey) biv.u.c.resize(ey + 1, 0);
        biv.u.c[ey] = f.c[i];
    }
    for (auto& biv : r.cx) up_trim(biv.u);
    return th_trim(std::move(r));
}

HomogPoly th_to(const TrivH& t, int degree_hint) {
    int d = th_is_zero(t) ? (degree_hint >= 0 ? degree_hint : 0) : t.deg;
    HomogPoly f = hp_zero(t.k, 2, d);
    if (th_is_zero(t)) return f;
    const auto& mt = monos(2, d);
    for (int j = 0; j < static_cast<int>(t.cx.size()); ++j) {
        const auto& biv = t.cx[j];
        for (int ey = 0; ey < static_cast<int>(biv.u.c.size()); ++ey) {
            if (biv.u.c[ey] == 0) continue;
            std::vector<int> e = {j, ey, d - j - ey};
            f.c[mt.index_of(e)] = biv.u.c[ey];
        }
    }
    return f;
}

TrivH th_gcd(const TrivH& a0, const TrivH& b0) {
    if (th_is_zero(a0)) return th_normalize(b0);
    if (th_is_zero(b0)) return th_normalize(a0);
    BivH ca = th_content(a0), cb = th_content(b0);
    BivH cont = bh_gcd(ca, cb);
    TrivH A = th_div_biv(a0, ca);
    TrivH B = th_div_biv(b0, cb);
    if (th_xdeg(A) < th_xdeg(B)) std::swap(A, B);
    while (!th_is_zero(B) && th_xdeg(B) > 0) {
        TrivH R = th_primitive(th_prem(A, B));
        A = std::move(B);
        B = std::move(R);
    }
    if (!th_is_zero(B)) {
        // primitive remainder free of x and of (y,z) content: gcd is trivial
        A = th_make(A.k, 0);
        A.cx[0] = bh_const(A.k, A.k->one());
    }
    return th_normalize(th_mul_biv(A, cont));
}

TrivH th_divexact(const TrivH& a, const TrivH& b) {
    if (th_is_zero(a)) return a;
    if (th_is_zero(b)) throw std::invalid_argument("th_divexact by zero");
    TrivH rem = a;
    int db = th_xdeg(b);
    TrivH q = th_make(a.k, a.deg - b.deg);
    while (!th_is_zero(rem)) {
        int da = th_xdeg(rem);
        if (da < db || da - db > q.deg) throw std::logic_error("th_divexact: not divisible");
        BivH t = bh_divexact(rem.cx[da], b.cx[db]);
        q.cx[da - db] = t;
        rem = th_sub(rem, th_mul_biv(th_shift_x(b, da - db), t));
    }
    return th_trim(std::move(q));
}

TrivH repeated_part(const HomogPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("repeated_part of zero");
    TrivH g = th_from(f);
    for (int v = 0; v <= 2; ++v) {
        HomogPoly pf = hp_partial(f, v);
        if (pf.is_zero()) continue;
        g = th_gcd(g, th_from(pf));
    }
    return g;
}

bool is_squarefree(const HomogPoly& f) {
    if (f.d == 0) return true;
    return repeated_part(f).deg <= 0;
}

bool th_has_factor_off(TrivH g, const TrivH& h) {
    while (!th_is_zero(g) && g.deg >= 1) {
        TrivH u = th_gcd(g, h);
        if (u.deg <= 0) return true;
        g = th_divexact(g, u);
    }
    return false;
}

bool th_shares_factor(const TrivH& a, const TrivH& b) {
    if (th_is_zero(a) || th_is_zero(b)) return false;
    return th_gcd(a, b).deg >= 1;
}

} // namespace cps
