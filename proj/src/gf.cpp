#include "cps/gf.hpp"
#include <cmath>

#include <algorithm>
#include <cassert>
#include <sstream>

namespace cps {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// dense univariate polynomials over F_p, index = degree
using PPoly = std::vector<long>;

void ptrim(PPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int pdeg(const PPoly& f) { return static_cast<int>(f.size()) - 1; }

PPoly pmul(const PPoly& f, const PPoly& g, long p) {
    if (f.empty() || g.empty()) return {};
    PPoly r(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (std::size_t j = 0; j < g.size(); ++j)
            r[i + j] = (r[i + j] + f[i] * g[j]) % p;
    }
    ptrim(r);
    return r;
}

// remainder of f modulo monic m
PPoly pmod(PPoly f, const PPoly& m, long p) {
    ptrim(f);
    int dm = pdeg(m);
    while (pdeg(f) >= dm) {
        long c = f.back();
        int shift = pdeg(f) - dm;
        for (int i = 0; i <= dm; ++i) {
            long& t = f[i + shift];
            t = (t - c * m[i]) % p;
            if (t < 0) t += p;
        }
        ptrim(f);
    }
    return f;
}

PPoly pgcd(PPoly f, PPoly g, long p) {
    ptrim(f);
    ptrim(g);
    while (!g.empty()) {
        // make g monic so pmod applies
        long lc = g.back();
        if (lc != 1) {
            long inv = 1, b = lc, ex = p - 2;
            while (ex) { // lc^(p-2) mod p
                if (ex & 1) inv = inv * b % p;
                b = b * b % p;
                ex >>= 1;
            }
            for (auto& c : g) c = c * inv % p;
        }
        PPoly r = pmod(f, g, p);
        f = std::move(g);
        g = std::move(r);
    }
    return f;
}

// x^(p^i) mod m for i = 1..imax, by iterated p-th powers
std::vector<PPoly> frobenius_powers(const PPoly& m, long p, int imax) {
    std::vector<PPoly> out;
    PPoly cur = {0, 1}; // x
    cur = pmod(cur, m, p);
    for (int i = 1; i <= imax; ++i) {
        // cur <- cur^p mod m, square-and-multiply on exponent p
        PPoly base = cur, acc = {1};
        long ex = p;
        while (ex) {
            if (ex & 1) acc = pmod(pmul(acc, base, p), m, p);
            base = pmod(pmul(base, base, p), m, p);
            ex >>= 1;
        }
        cur = std::move(acc);
        out.push_back(cur);
    }
    return out;
}

// degree-k monic f is irreducible over F_p iff gcd(f, x^(p^i) - x) is
// constant for every i <= k/2
bool is_irreducible(const PPoly& f, long p) {
    int k = pdeg(f);
    if (k == 1) return true;
    auto frob = frobenius_powers(f, p, k / 2);
    for (int i = 1; i <= k / 2; ++i) {
        PPoly d = frob[i - 1];
        if (d.size() < 2) d.resize(2, 0);
        d[1] = (d[1] - 1 + p) % p; // subtract x
        ptrim(d);
        PPoly g = pgcd(f, d, p);
        if (pdeg(g) > 0) return false;
    }
    return true;
}

// first monic irreducible of degree k, scanning constant-first digit order
PPoly find_modulus(long p, int k) {
    std::uint64_t bound = 1;
    for (int i = 0; i < k; ++i) bound *= static_cast<std::uint64_t>(p);
    for (std::uint64_t code = 0; code < bound; ++code) {
        PPoly f(k + 1, 0);
        std::uint64_t c = code;
        for (int i = 0; i < k; ++i) {
            f[i] = static_cast<long>(c % p);
            c /= p;
        }
        f[k] = 1;
        if (is_irreducible(f, p)) return f;
    }
    throw FieldError("no irreducible modulus found"); // unreachable
}

std::vector<long> prime_factors(std::uint64_t n) {
    std::vector<long> fs;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(static_cast<long>(d));
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(static_cast<long>(n));
    return fs;
}

} // namespace

std::shared_ptr<const Field> Field::make(long p, int a, int e, std::uint64_t size_bound) {
    if (!is_prime(p)) throw FieldError("p = " + std::to_string(p) + " is not prime");
    if (a < 1 || e < 1) throw FieldError("extension degrees must be positive");
    return std::shared_ptr<const Field>(new Field(p, a, e, size_bound));
}

Field::Field(long p, int a, int e, std::uint64_t size_bound) : p_(p), a_(a), e_(e), k_(a * e) {
    double logsize = k_ * std::log2(static_cast<double>(p));
    if (logsize > 63 || static_cast<double>(size_bound) < std::exp2(logsize) - 0.5)
        throw FieldError("field size p^" + std::to_string(k_) + " exceeds bound");
    q_ = 1;
    for (int i = 0; i < a_; ++i) q_ *= static_cast<std::uint64_t>(p_);
    size_ = 1;
    for (int i = 0; i < k_; ++i) size_ *= static_cast<std::uint64_t>(p_);

    PPoly m = find_modulus(p_, k_);
    modulus_.assign(m.begin(), m.end());

    if (size_ <= kTableLimit) build_tables();
    if (!tabled_) {
        // Frobenius as an F_p-linear map; column j = digits of (x^j)^q
        frob_cols_.resize(k_);
        for (int j = 0; j < k_; ++j) {
            felem xj = 1;
            for (int i = 0; i < j; ++i) xj = mul_nomod_table(xj, static_cast<felem>(p_));
            felem im = xj;
            // raise to q = p^a by repeated p-th powers via square-and-multiply
            std::uint64_t ex = q_;
            felem acc = one(), base = im;
            while (ex) {
                if (ex & 1) acc = mul_nomod_table(acc, base);
                base = mul_nomod_table(base, base);
                ex >>= 1;
            }
            frob_cols_[j] = decompose(acc);
        }
    }
    build_base_embedding();
}

int Field::digit(felem x, int i) const {
    std::uint64_t v = x;
    for (int t = 0; t < i; ++t) v /= static_cast<std::uint64_t>(p_);
    return static_cast<int>(v % static_cast<std::uint64_t>(p_));
}

std::vector<int> Field::decompose(felem x) const {
    std::vector<int> d(k_);
    std::uint64_t v = x;
    for (int i = 0; i < k_; ++i) {
        d[i] = static_cast<int>(v % static_cast<std::uint64_t>(p_));
        v /= static_cast<std::uint64_t>(p_);
    }
    return d;
}

felem Field::compose(const std::vector<int>& digits) const {
    std::uint64_t v = 0, mult = 1;
    for (int i = 0; i < k_; ++i) {
        long di = i < static_cast<int>(digits.size()) ? digits[i] : 0;
        v += mult * static_cast<std::uint64_t>(((di % p_) + p_) % p_);
        mult *= static_cast<std::uint64_t>(p_);
    }
    return static_cast<felem>(v);
}

felem Field::add(felem x, felem y) const {
    if (p_ == 2) return x ^ y;
    std::uint64_t r = 0, mult = 1, vx = x, vy = y;
    for (int i = 0; i < k_; ++i) {
        long s = static_cast<long>(vx % p_) + static_cast<long>(vy % p_);
        if (s >= p_) s -= p_;
        r += mult * static_cast<std::uint64_t>(s);
        vx /= static_cast<std::uint64_t>(p_);
        vy /= static_cast<std::uint64_t>(p_);
        mult *= static_cast<std::uint64_t>(p_);
    }
    return static_cast<felem>(r);
}

felem Field::neg(felem x) const {
    if (p_ == 2) return x;
    std::uint64_t r = 0, mult = 1, vx = x;
    for (int i = 0; i < k_; ++i) {
        long d = static_cast<long>(vx % p_);
        r += mult * static_cast<std::uint64_t>(d == 0 ? 0 : p_ - d);
        vx /= static_cast<std::uint64_t>(p_);
        mult *= static_cast<std::uint64_t>(p_);
    }
    return static_cast<felem>(r);
}

felem Field::sub(felem x, felem y) const { return add(x, neg(y)); }

felem Field::mul_nomod_table(felem x, felem y) const {
    if (x == 0 || y == 0) return 0;
    std::vector<long> prod(2 * k_ - 1, 0);
    auto dx = decompose(x), dy = decompose(y);
    for (int i = 0; i < k_; ++i) {
        if (dx[i] == 0) continue;
        for (int j = 0; j < k_; ++j)
            prod[i + j] = (prod[i + j] + static_cast<long>(dx[i]) * dy[j]) % p_;
    }
    for (int i = 2 * k_ - 2; i >= k_; --i) {
        long c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (int j = 0; j < k_; ++j) {
            long& t = prod[i - k_ + j];
            t = (t - c * modulus_[j]) % p_;
            if (t < 0) t += p_;
        }
    }
    std::vector<int> d(k_);
    for (int i = 0; i < k_; ++i) d[i] = static_cast<int>(prod[i]);
    return compose(d);
}

felem Field::mul(felem x, felem y) const {
    if (x == 0 || y == 0) return 0;
    if (tabled_) {
        std::uint64_t n = size_ - 1;
        return exp_[(static_cast<std::uint64_t>(log_[x]) + log_[y]) % n];
    }
    return mul_nomod_table(x, y);
}

felem Field::pow(felem x, std::uint64_t n) const {
    if (n == 0) return one();
    if (x == 0) return 0;
    if (tabled_) {
        std::uint64_t N = size_ - 1;
        return exp_[static_cast<std::uint64_t>(log_[x]) % N * (n % N) % N];
    }
    felem acc = one(), base = x;
    while (n) {
        if (n & 1) acc = mul(acc, base);
        base = mul(base, base);
        n >>= 1;
    }
    return acc;
}

felem Field::inv(felem x) const {
    if (x == 0) throw FieldError("division by zero");
    if (tabled_) {
        std::uint64_t N = size_ - 1;
        return exp_[(N - log_[x]) % N];
    }
    return pow(x, size_ - 2);
}

felem Field::from_int(long v) const {
    long r = v % p_;
    if (r < 0) r += p_;
    return static_cast<felem>(r);
}

felem Field::frobenius_q(felem x) const {
    if (x == 0) return 0;
    if (tabled_) {
        std::uint64_t N = size_ - 1;
        return exp_[static_cast<std::uint64_t>(log_[x]) * (q_ % N) % N];
    }
    auto dx = decompose(x);
    std::vector<int> out(k_, 0);
    for (int j = 0; j < k_; ++j) {
        if (dx[j] == 0) continue;
        for (int i = 0; i < k_; ++i)
            out[i] = static_cast<int>((out[i] + static_cast<long>(dx[j]) * frob_cols_[j][i]) % p_);
    }
    return compose(out);
}

void Field::build_tables() {
    std::uint64_t N = size_ - 1;
    // smallest multiplicative generator in code order
    felem g = one();
    if (N > 1) {
        auto fs = prime_factors(N);
        for (std::uint64_t c = 2; c < size_; ++c) {
            felem cand = static_cast<felem>(c);
            bool ok = true;
            for (long f : fs) {
                felem acc = one(), base = cand;
                std::uint64_t ex = N / static_cast<std::uint64_t>(f);
                while (ex) {
                    if (ex & 1) acc = mul_nomod_table(acc, base);
                    base = mul_nomod_table(base, base);
                    ex >>= 1;
                }
                if (acc == one()) { ok = false; break; }
            }
            if (ok) { g = cand; break; }
        }
    }
    exp_.resize(N);
    log_.assign(size_, 0);
    felem cur = one();
    for (std::uint64_t i = 0; i < N; ++i) {
        exp_[i] = cur;
        log_[cur] = static_cast<std::uint32_t>(i);
        cur = mul_nomod_table(cur, g);
    }
    tabled_ = true;
}

void Field::build_base_embedding() {
    base_embed_.resize(q_);
    if (a_ == 1) {
        for (std::uint64_t c = 0; c < q_; ++c) base_embed_[c] = static_cast<felem>(c);
    } else if (e_ == 1) {
        for (std::uint64_t c = 0; c < q_; ++c) base_embed_[c] = static_cast<felem>(c);
    } else {
        auto base = Field::make(p_, a_, 1);
        // smallest root of the base modulus in this field
        felem root = 0;
        bool found = false;
        for (std::uint64_t c = 0; c < size_ && !found; ++c) {
            felem acc = 0;
            for (int i = base->deg(); i >= 0; --i)
                acc = add(mul(acc, static_cast<felem>(c)), from_int(base->modulus()[i]));
            if (acc == 0) { root = static_cast<felem>(c); found = true; }
        }
        if (!found) throw FieldError("no embedding root found");
        for (std::uint64_t b = 0; b < q_; ++b) {
            felem acc = 0;
            felem pw = one();
            std::uint64_t v = b;
            for (int i = 0; i < a_; ++i) {
                acc = add(acc, mul(from_int(static_cast<long>(v % p_)), pw));
                v /= static_cast<std::uint64_t>(p_);
                pw = mul(pw, root);
            }
            base_embed_[b] = acc;
        }
    }

    // change of basis for coordinates over F_q: columns are the F_p digit
    // vectors of embed(w^t) * xi^i, w = base generator class, xi = own class
    if (e_ == 1) return;
    std::vector<std::vector<int>> M(k_, std::vector<int>(k_, 0));
    felem xi = k_ > 1 ? static_cast<felem>(p_) : one();
    felem xi_pow = one();
    for (int i = 0; i < e_; ++i) {
        felem wt = one();
        felem w = a_ > 1 ? base_embed_[static_cast<felem>(p_)] : one();
        for (int t = 0; t < a_; ++t) {
            felem col = mul(wt, xi_pow);
            auto dg = decompose(col);
            for (int r = 0; r < k_; ++r) M[r][i * a_ + t] = dg[r];
            wt = mul(wt, w);
        }
        xi_pow = mul(xi_pow, xi);
    }
    // invert M over F_p by Gauss-Jordan
    std::vector<std::vector<long>> A(k_, std::vector<long>(2 * k_, 0));
    for (int r = 0; r < k_; ++r) {
        for (int c = 0; c < k_; ++c) A[r][c] = M[r][c];
        A[r][k_ + r] = 1;
    }
    for (int col = 0, row = 0; col < k_ && row < k_; ++col) {
        int piv = -1;
        for (int r = row; r < k_; ++r)
            if (A[r][col] != 0) { piv = r; break; }
        if (piv < 0) throw FieldError("coordinate basis is singular");
        std::swap(A[piv], A[row]);
        long lc = A[row][col], inv = 1, b = lc, ex = p_ - 2;
        while (ex) {
            if (ex & 1) inv = inv * b % p_;
            b = b * b % p_;
            ex >>= 1;
        }
        for (auto& v : A[row]) v = v * inv % p_;
        for (int r = 0; r < k_; ++r) {
            if (r == row || A[r][col] == 0) continue;
            long f = A[r][col];
            for (int c2 = 0; c2 < 2 * k_; ++c2) {
                A[r][c2] = (A[r][c2] - f * A[row][c2]) % p_;
                if (A[r][c2] < 0) A[r][c2] += p_;
            }
        }
        ++row;
    }
    coord_inv_.assign(k_, std::vector<int>(k_));
    for (int r = 0; r < k_; ++r)
        for (int c = 0; c < k_; ++c) coord_inv_[r][c] = static_cast<int>(A[r][k_ + c]);
}

felem Field::embed_base(felem base_code) const {
    return base_embed_[base_code];
}

void Field::coords_over_base(felem z, felem* out) const {
    if (e_ == 1) {
        out[0] = z;
        return;
    }
    auto dg = decompose(z);
    for (int i = 0; i < e_; ++i) {
        std::uint64_t code = 0, mult = 1;
        for (int t = 0; t < a_; ++t) {
            long v = 0;
            for (int s = 0; s < k_; ++s) v = (v + static_cast<long>(coord_inv_[i * a_ + t][s]) * dg[s]) % p_;
            code += mult * static_cast<std::uint64_t>(v);
            mult *= static_cast<std::uint64_t>(p_);
        }
        out[i] = static_cast<felem>(code);
    }
}

std::string Field::to_string(felem x) const {
    if (k_ == 1) return std::to_string(x);
    std::ostringstream os;
    os << x << "#";
    auto d = decompose(x);
    for (int i = 0; i < k_; ++i) os << (i ? "," : "(") << d[i];
    os << ")";
    return os.str();
}

FieldTower::FieldTower(long p, int a, std::uint64_t size_bound)
    : p_(p), a_(a), size_bound_(size_bound), base_(Field::make(p, a, 1, size_bound)) {}

FieldPtr FieldTower::ext(int e) const {
    if (e == 1) return base_;
    std::lock_guard<std::mutex> lock(mu_);
    auto it = exts_.find(e);
    if (it != exts_.end()) return it->second;
    auto f = Field::make(p_, a_, e, size_bound_);
    exts_.emplace(e, f);
    return f;
}

const std::vector<felem>& FieldTower::embedding(int d, int e) const {
    if (e % d != 0) throw FieldError("embedding requires d | e");
    auto src = ext(d);
    auto dst = ext(e);
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(d, e);
    auto it = embeds_.find(key);
    if (it != embeds_.end()) return it->second;

    std::vector<felem> table(src->size());
    if (d == e) {
        for (std::uint64_t c = 0; c < src->size(); ++c) table[c] = static_cast<felem>(c);
    } else if (d == 1) {
        for (std::uint64_t c = 0; c < src->size(); ++c) table[c] = dst->embed_base(static_cast<felem>(c));
    } else {
        // root-match the source modulus, keeping the F_q structures aligned:
        // the embedding must agree with both fields' base embeddings on F_q
        felem w_src = src->embed_base(a_ > 1 ? static_cast<felem>(p_) : base_->one());
        felem w_dst = dst->embed_base(a_ > 1 ? static_cast<felem>(p_) : base_->one());
        bool done = false;
        for (std::uint64_t c = 0; c < dst->size() && !done; ++c) {
            felem acc = 0;
            for (int i = src->deg(); i >= 0; --i)
                acc = dst->add(dst->mul(acc, static_cast<felem>(c)), dst->from_int(src->modulus()[i]));
            if (acc != 0) continue;
            // candidate map from this root
            std::vector<felem> cand(src->size());
            for (std::uint64_t b = 0; b < src->size(); ++b) {
                felem im = 0, pw = dst->one();
                std::uint64_t v = b;
                for (int i = 0; i < src->deg(); ++i) {
                    im = dst->add(im, dst->mul(dst->from_int(static_cast<long>(v % p_)), pw));
                    v /= static_cast<std::uint64_t>(p_);
                    pw = dst->mul(pw, static_cast<felem>(c));
                }
                cand[b] = im;
            }
            if (cand[w_src] == w_dst) {
                table = std::move(cand);
                done = true;
            }
        }
        if (!done) throw FieldError("no compatible embedding found");
    }
    auto [pos, inserted] = embeds_.emplace(key, std::move(table));
    (void)inserted;
    return pos->second;
}

} // namespace cps
