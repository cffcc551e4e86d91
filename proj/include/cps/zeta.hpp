#pragma once

#include <optional>
#include <string>

#include "cps/geometry.hpp"

namespace cps {

class ZetaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// normalized rational with 64-bit parts; throws on overflow
struct Rat64 {
    long long num = 0;
    long long den = 1;

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rat64&) const = default;
};

Rat64 rat_make(long long num, long long den);
Rat64 rat_mul(const Rat64& a, const Rat64& b);
Rat64 rat_inv(const Rat64& a);
Rat64 rat_pow(Rat64 a, int n); // n may be negative
std::string rat_str(const Rat64& a);

struct ZetaValue {
    double value = 1.0;
    int truncation_degree = 0; // E; 0 when no truncation was involved
    double tail_bound = 0.0;   // 0 iff exact
    bool exact = false;
    std::optional<Rat64> rational; // closed forms and finite products
    std::string exact_repr;        // exact truncated value (arbitrary precision), may be empty
};

// N_1..N_E, via the registered formula or by enumeration
std::vector<std::int64_t> point_counts(const Scheme& S, int E,
                                       std::uint64_t budget = kDefaultEnumBudget);
// Moebius inversion: number a_e of closed points of each degree 1..E
std::vector<std::int64_t> closed_point_counts(const std::vector<std::int64_t>& N,
                                              std::uint64_t q);

// product of (1 - q^(-s deg P))^(-1) over closed points of degree <= E,
// with a tail bound from the dominating count formula (the ambient space
// when none is registered). Throws when s <= dim S.
ZetaValue zeta_truncated(const Scheme& S, int s, int E,
                         std::uint64_t budget = kDefaultEnumBudget);

bool has_zeta_closed_form(const Scheme& S);
// registered tags: P1, P2, Pn, line, conic, two_lines; removed points
// divide out their Euler factors
ZetaValue zeta_closed_form(const Scheme& S, int s);

// closed form if registered; exact finite product when the scheme is
// finite (certified by count consistency); truncated otherwise
ZetaValue zeta_best(const Scheme& S, int s, int E,
                    std::uint64_t budget = kDefaultEnumBudget);

} // namespace cps
