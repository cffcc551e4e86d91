#include "cps/zeta.hpp"

#include <gmpxx.h>

#include <cmath>
#include <numeric>

namespace cps {

namespace {

long long checked_ll(__int128 v, const char* what) {
    if (v > (static_cast<__int128>(1) << 62) || v < -(static_cast<__int128>(1) << 62))
        throw ZetaError(std::string("rational overflow in ") + what);
    return static_cast<long long>(v);
}

} // namespace

Rat64 rat_make(long long num, long long den) {
    if (den == 0) throw ZetaError("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rat64{num, den};
}

Rat64 rat_mul(const Rat64& a, const Rat64& b) {
    long long g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
    long long g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
    __int128 num = static_cast<__int128>(a.num / g1) * (b.num / g2);
    __int128 den = static_cast<__int128>(a.den / g2) * (b.den / g1);
    return rat_make(checked_ll(num, "rat_mul"), checked_ll(den, "rat_mul"));
}

Rat64 rat_inv(const Rat64& a) {
    if (a.num == 0) throw ZetaError("inverting zero");
    return rat_make(a.den, a.num);
}

Rat64 rat_pow(Rat64 a, int n) {
    if (n < 0) {
        a = rat_inv(a);
        n = -n;
    }
    Rat64 r{1, 1};
    while (n) {
        if (n & 1) r = rat_mul(r, a);
        a = rat_mul(a, a);
        n >>= 1;
    }
    return r;
}

std::string rat_str(const Rat64& a) {
    return std::to_string(a.num) + "/" + std::to_string(a.den);
}

std::vector<std::int64_t> point_counts(const Scheme& S, int E, std::uint64_t budget) {
    std::vector<std::int64_t> N;
    N.reserve(E);
    for (int e = 1; e <= E; ++e) N.push_back(count_points(S, e, budget));
    return N;
}

std::vector<std::int64_t> closed_point_counts(const std::vector<std::int64_t>& N,
                                              std::uint64_t q) {
    (void)q;
    // a_e = (1/e) sum_{d | e} mu(e/d) N_d
    auto mu = [](int m) {
        int result = 1;
        for (int p = 2; p * p <= m; ++p) {
            if (m % p) continue;
            m /= p;
            if (m % p == 0) return 0;
            result = -result;
        }
        if (m > 1) result = -result;
        return result;
    };
    std::vector<std::int64_t> a(N.size());
    for (int e = 1; e <= static_cast<int>(N.size()); ++e) {
        __int128 sum = 0;
        for (int d = 1; d <= e; ++d)
            if (e % d == 0) sum += static_cast<__int128>(mu(e / d)) * N[d - 1];
        if (sum % e != 0) throw ZetaError("inconsistent point counts (Moebius)");
        a[e - 1] = static_cast<std::int64_t>(sum / e);
        if (a[e - 1] < 0) throw ZetaError("negative closed point count");
    }
    return a;
}

namespace {

// degree and coefficient-sum of the dominating majorant N_e <= A q^(D e)
void majorant(const Scheme& S, long long& A, int& D) {
    if (S.formula) {
        A = 0;
        D = 0;
        const auto& c = S.formula->coef;
        for (std::size_t i = 0; i < c.size(); ++i) {
            A += std::llabs(c[i]);
            if (c[i] != 0) D = static_cast<int>(i);
        }
        A = std::max(A, 1LL);
    } else {
        A = S.n + 1;
        D = S.n;
    }
}

int scheme_dim_guess(const Scheme& S, std::uint64_t budget) {
    if (S.formula) {
        int D = 0;
        for (std::size_t i = 0; i < S.formula->coef.size(); ++i)
            if (S.formula->coef[i] != 0) D = static_cast<int>(i);
        return D;
    }
    auto est = estimate_dimension(S, 3, -1, budget);
    return est.is_empty ? -1 : est.dim;
}

ZetaValue one_value() {
    ZetaValue z;
    z.value = 1.0;
    z.exact = true;
    z.rational = Rat64{1, 1};
    return z;
}

} // namespace

ZetaValue zeta_truncated(const Scheme& S, int s, int E, std::uint64_t budget) {
    int dim = scheme_dim_guess(S, budget);
    if (dim >= 0 && s <= dim)
        throw ZetaError("zeta product diverges: s <= dim");
    auto N = point_counts(S, E, budget);
    auto a = closed_point_counts(N, S.tower->q());
    bool all_zero = true;
    for (auto v : N) all_zero = all_zero && v == 0;

    long double q = static_cast<long double>(S.tower->q());
    long double val = 1.0L;
    for (int e = 1; e <= E; ++e) {
        if (a[e - 1] == 0) continue;
        long double factor = 1.0L - std::pow(q, -static_cast<long double>(s) * e);
        val *= std::pow(factor, -static_cast<long double>(a[e - 1]));
    }

    ZetaValue z;
    z.value = static_cast<double>(val);
    z.truncation_degree = E;

    // exact arithmetic of the truncated product when small enough
    if (E <= 12) {
        mpq_class prod(1);
        for (int e = 1; e <= E; ++e) {
            if (a[e - 1] == 0) continue;
            mpz_class qse;
            mpz_ui_pow_ui(qse.get_mpz_t(), static_cast<unsigned long>(S.tower->q()),
                          static_cast<unsigned long>(s) * e);
            mpq_class factor(qse, qse - 1); // (1 - q^{-se})^{-1}
            factor.canonicalize();
            mpz_class fn, fd;
            mpz_pow_ui(fn.get_mpz_t(), factor.get_num().get_mpz_t(),
                       static_cast<unsigned long>(a[e - 1]));
            mpz_pow_ui(fd.get_mpz_t(), factor.get_den().get_mpz_t(),
                       static_cast<unsigned long>(a[e - 1]));
            prod *= mpq_class(fn, fd);
        }
        prod.canonicalize();
        z.exact_repr = prod.get_num().get_str() + "/" + prod.get_den().get_str();
        z.value = prod.get_d();
    }

    if (all_zero && !S.formula) {
        // certified empty up to E only; tail still bounded below
    }
    long long A;
    int D;
    majorant(S, A, D);
    if (s > D) {
        long double x1 = std::pow(q, -static_cast<long double>(s) * (E + 1));
        long double r = 1.0L / (1.0L - x1);
        long double geo = std::pow(q, static_cast<long double>(D - s) * (E + 1)) /
                          (1.0L - std::pow(q, static_cast<long double>(D - s)));
        long double tail_log = static_cast<long double>(A) * r / (E + 1) * geo;
        z.tail_bound = static_cast<double>(val * (std::exp(tail_log) - 1.0L));
    } else {
        z.tail_bound = std::numeric_limits<double>::infinity();
    }
    z.exact = false;
    return z;
}

bool has_zeta_closed_form(const Scheme& S) {
    if (!S.zeta_tag) return false;
    const std::string& t = *S.zeta_tag;
    return t == "P1" || t == "P2" || t == "Pn" || t == "line" || t == "conic" ||
           t == "two_lines";
}

ZetaValue zeta_closed_form(const Scheme& S, int s) {
    if (!has_zeta_closed_form(S)) throw ZetaError("no closed form registered");
    long long q = static_cast<long long>(S.tower->q());
    const std::string& tag = *S.zeta_tag;
    auto qpow = [&](int k) {
        __int128 v = 1;
        for (int i = 0; i < k; ++i) v = v * q;
        return checked_ll(v, "zeta_closed_form");
    };
    Rat64 val{1, 1};
    int dim = 0;
    if (tag == "P1" || tag == "P2" || tag == "Pn") {
        int n = S.n;
        dim = n;
        if (s <= dim) throw ZetaError("zeta product diverges: s <= dim");
        for (int i = 0; i <= n; ++i) {
            // (1 - q^(i-s))^{-1} = q^(s-i) / (q^(s-i) - 1)
            long long d = qpow(s - i);
            val = rat_mul(val, Rat64{d, d - 1});
        }
    } else if (tag == "line" || tag == "conic") {
        dim = 1;
        if (s <= dim) throw ZetaError("zeta product diverges: s <= dim");
        val = rat_mul(Rat64{qpow(s), qpow(s) - 1}, Rat64{qpow(s - 1), qpow(s - 1) - 1});
    } else { // two_lines: zeta_{P^1}^2 * (1 - q^{-s})
        dim = 1;
        if (s <= dim) throw ZetaError("zeta product diverges: s <= dim");
        Rat64 p1 = rat_mul(Rat64{qpow(s), qpow(s) - 1}, Rat64{qpow(s - 1), qpow(s - 1) - 1});
        val = rat_mul(rat_mul(p1, p1), Rat64{qpow(s) - 1, qpow(s)});
    }
    for (const auto& cp : S.removed) {
        long long d = qpow(s * cp.degree);
        val = rat_mul(val, Rat64{d - 1, d}); // remove one Euler factor
    }
    ZetaValue z;
    z.value = val.to_double();
    z.exact = true;
    z.rational = val;
    z.exact_repr = rat_str(val);
    return z;
}

ZetaValue zeta_best(const Scheme& S, int s, int E, std::uint64_t budget) {
    if (has_zeta_closed_form(S)) return zeta_closed_form(S, s);

    int probe = std::min(E, 6);
    std::vector<std::int64_t> N = point_counts(S, probe, budget);
    auto est = estimate_dimension(S, probe, -1, budget);
    if (est.is_empty) return one_value();

    if (est.dim == 0) {
        // finite: the Euler product over the enumerated closed points is the
        // whole product (no growth seen up to the probe degree)
        auto a = closed_point_counts(N, S.tower->q());
        long long q = static_cast<long long>(S.tower->q());
        Rat64 val{1, 1};
        for (int deg = 1; deg <= probe; ++deg) {
            if (a[deg - 1] == 0) continue;
            __int128 p = 1;
            for (int i = 0; i < s * deg; ++i) p *= q;
            long long d = checked_ll(p, "zeta_best");
            val = rat_mul(val, rat_pow(Rat64{d, d - 1}, static_cast<int>(a[deg - 1])));
        }
        ZetaValue z;
        z.value = val.to_double();
        z.exact = true;
        z.rational = val;
        z.exact_repr = rat_str(val);
        return z;
    }
    return zeta_truncated(S, s, E, budget);
}

} // namespace cps
