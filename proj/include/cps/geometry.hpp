#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cps/poly.hpp"

namespace cps {

constexpr std::uint64_t kDefaultEnumBudget = 1ULL << 22;

class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Point of P^n(F_{q^e}), scaled so the first nonzero coordinate is 1.
// Two equal points have identical coordinate vectors.
struct ProjPoint {
    FieldPtr K;
    std::vector<felem> x;
    int chart = 0; // index of the leading 1
};

ProjPoint normalize_point(FieldPtr K, std::vector<felem> coords);

// Frobenius orbit of geometric points; rep is the orbit member with the
// smallest enumeration key, with coordinates in F_{q^degree}.
struct ClosedPoint {
    ProjPoint rep;
    int degree = 1;
};

// N_e = sum_i coef[i] * q^(i*e); covers products of linear spaces and the
// fixture curves, enough to count far past the enumeration budget
struct CountFormula {
    std::vector<long long> coef;
};

struct Scheme {
    TowerPtr tower;
    int n = 2;
    std::vector<HomogPoly> gens; // no generators = all of P^n
    std::vector<ClosedPoint> removed;
    bool assume_saturated = true;
    bool assume_reduced = true;
    std::optional<CountFormula> formula;
    std::optional<std::string> zeta_tag;
};

Scheme ambient_space(TowerPtr tower, int n);
// closed intersection: union of the generator sets, removed points kept from both
Scheme intersect(const Scheme& A, const Scheme& B);

// --- enumeration keys -------------------------------------------------------
// P^n(F_{q^e}) is enumerated chart by chart (leading 1 at x_0 first), the
// free coordinates running through element codes most-significant-first.
// Keys are dense in [0, #P^n(F_{q^e})).

std::uint64_t proj_space_size(const Field& K, int n);
std::uint64_t point_key(const ProjPoint& pt, int n);
ProjPoint point_from_key(const FieldPtr& K, int n, std::uint64_t key);

bool on_scheme_locus(const Scheme& S, const ProjPoint& pt); // generators vanish
bool on_scheme(const Scheme& S, const ProjPoint& pt);       // and not removed
// enumeration keys of removed points rational over F_{q^e}, sorted
std::vector<std::uint64_t> removed_keys(const Scheme& S, int e);

ProjPoint frobenius_point(const ProjPoint& pt);

// --- point counting ---------------------------------------------------------

std::int64_t count_points(const Scheme& S, int e, std::uint64_t budget = kDefaultEnumBudget);
std::int64_t count_points_serial(const Scheme& S, int e,
                                 std::uint64_t budget = kDefaultEnumBudget);

std::vector<ProjPoint> rational_points(const Scheme& S, int e,
                                       std::uint64_t budget = kDefaultEnumBudget);
// all closed points of exactly the given degree
std::vector<ClosedPoint> closed_points(const Scheme& S, int degree,
                                       std::uint64_t budget = kDefaultEnumBudget);

// --- smoothness and embedding dimension -------------------------------------

// chart-local Jacobian: row per generator, columns are the affine variables
// of the point's chart, entries in the point's field
std::vector<std::vector<felem>> jacobian_at(const Scheme& S, const ProjPoint& pt);
// chart-local gradient of f at pt (length n)
std::vector<felem> gradient_at(const HomogPoly& f, const ProjPoint& pt);

// Is H_f cut smoothly out of U (smooth of dimension m-1) at pt in U?
// True when f(pt) != 0; otherwise the gradient must act nontrivially on the
// tangent space of U, i.e. lie outside the row space of U's Jacobian.
bool smooth_at(const Scheme& U, const HomogPoly& f, const ProjPoint& pt);
bool is_smooth_on_U_at(const Scheme& U, const HomogPoly& f, const ClosedPoint& P);

// Jacobian rank is n-m at every closed point of degree <= degree_bound.
// A certificate by enumeration, not a proof.
bool verify_smooth_of_dim(const Scheme& S, int m, int degree_bound,
                          std::uint64_t budget = kDefaultEnumBudget);

// fiber dimension of Omega^1 at P: n - rank of the chart-local Jacobian
int embedding_dimension(const Scheme& V, const ClosedPoint& P);

// --- dimension estimation ----------------------------------------------------

struct DimEstimate {
    bool is_empty = true;
    int dim = 0; // meaningful only when !is_empty

    bool leq(int k) const { return is_empty || dim <= k; } // dim(empty) = -inf
    bool geq(int k) const { return !is_empty && dim >= k; }
    std::string str() const { return is_empty ? "empty" : std::to_string(dim); }
};

// least D >= 0 with N_e <= C q^(D e) for all measured e; counts[i] = N_{i+1}
DimEstimate estimate_dimension_counts(const std::vector<std::int64_t>& counts,
                                      std::uint64_t q, double C);
// growth estimate from N_1..N_ext_bound; C < 0 selects the default
// 4 * max(1, product of generator degrees)
DimEstimate estimate_dimension(const Scheme& S, int ext_bound, double C = -1,
                               std::uint64_t budget = kDefaultEnumBudget);

struct Stratum {
    int e = 0;                       // embedding dimension
    std::vector<ClosedPoint> points; // up to the degree bound
    DimEstimate dim;                 // growth estimate l_e
};

struct StrataDecomposition {
    std::vector<Stratum> strata;               // ordered by e
    std::optional<int> max_e_plus_dim;         // nullopt = -inf (no strata)
};

StrataDecomposition stratify_by_embedding_dim(const Scheme& V, int degree_bound,
                                              int ext_bound,
                                              std::uint64_t budget = kDefaultEnumBudget);

std::string point_to_string(const ProjPoint& pt);

} // namespace cps
