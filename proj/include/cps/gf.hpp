#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cps {

// Field element code: base-p digit vector (c_0, ..., c_{k-1}) packed as
// sum c_i p^i. Codes 0 and 1 are the additive and multiplicative units.
using felem = std::uint32_t;

class FieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// F_{p^(a*e)} presented as F_p[x]/(modulus), viewed as the degree-e
// extension of F_q with q = p^a. Immutable after construction; all
// operations are pure and safe to call concurrently.
class Field {
public:
    static constexpr std::uint64_t kDefaultSizeBound = 1ULL << 24;
    static constexpr std::uint64_t kTableLimit = 1ULL << 20;

    static std::shared_ptr<const Field> make(long p, int a, int e,
                                             std::uint64_t size_bound = kDefaultSizeBound);

    long p() const { return p_; }
    int a() const { return a_; }
    int e() const { return e_; }
    std::uint64_t q() const { return q_; }       // p^a
    std::uint64_t size() const { return size_; } // p^(a*e)
    int deg() const { return k_; }               // a*e
    // modulus coefficients over F_p, index i = coefficient of x^i, monic of degree a*e
    const std::vector<int>& modulus() const { return modulus_; }

    felem zero() const { return 0; }
    felem one() const { return size_ > 1 ? 1 : 0; }

    felem add(felem x, felem y) const;
    felem sub(felem x, felem y) const;
    felem neg(felem x) const;
    felem mul(felem x, felem y) const;
    felem inv(felem x) const;
    felem pow(felem x, std::uint64_t n) const;
    felem from_int(long v) const; // prime-subfield constant v mod p

    // x -> x^q, the relative Frobenius over F_q
    felem frobenius_q(felem x) const;

    bool is_prime_field() const { return k_ == 1; }

    // digit access
    int digit(felem x, int i) const;
    felem compose(const std::vector<int>& digits) const;
    std::vector<int> decompose(felem x) const;

    // Embedding of the base field F_q = F_{p^a}: base codes are codes of
    // Field(p, a, 1). Identity when e == 1.
    felem embed_base(felem base_code) const;
    // Coordinates of z over F_q w.r.t. the basis {1, x, ..., x^(e-1)}
    // (x = residue class of the modulus variable). out must hold e entries,
    // each a code of the base field.
    void coords_over_base(felem z, felem* out) const;

    std::string to_string(felem x) const;

private:
    Field(long p, int a, int e, std::uint64_t size_bound);

    felem mul_nomod_table(felem x, felem y) const; // polynomial mul + reduce
    void build_tables();
    void build_base_embedding();

    long p_;
    int a_, e_, k_;
    std::uint64_t q_, size_;
    std::vector<int> modulus_;

    // log/exp tables for fields of size <= kTableLimit
    bool tabled_ = false;
    std::vector<felem> exp_;        // exp_[i] = g^i, length size-1
    std::vector<std::uint32_t> log_; // log_[code], defined for code != 0

    // q-power Frobenius as an F_p-linear map: column j = digits of (x^j)^q
    std::vector<std::vector<int>> frob_cols_;

    // base-field embedding (size q) and the inverse change of basis for
    // coords_over_base, stored row-major over F_p (k_ x k_)
    std::vector<felem> base_embed_;
    std::vector<std::vector<int>> coord_inv_;
};

using FieldPtr = std::shared_ptr<const Field>;

// Lazily-built family F_{q^e}, e >= 1, over a fixed base F_q, with
// pairwise embeddings for d | e. Thread-safe.
class FieldTower {
public:
    FieldTower(long p, int a, std::uint64_t size_bound = Field::kDefaultSizeBound);

    long p() const { return p_; }
    int a() const { return a_; }
    std::uint64_t q() const { return base_->q(); }
    const FieldPtr& base() const { return base_; }
    FieldPtr ext(int e) const;

    // embedding table F_{q^d} -> F_{q^e}; requires d | e
    const std::vector<felem>& embedding(int d, int e) const;

private:
    long p_;
    int a_;
    std::uint64_t size_bound_;
    FieldPtr base_;
    mutable std::mutex mu_;
    mutable std::map<int, FieldPtr> exts_;
    mutable std::map<std::pair<int, int>, std::vector<felem>> embeds_;
};

using TowerPtr = std::shared_ptr<FieldTower>;

bool is_prime(long n);

} // namespace cps
