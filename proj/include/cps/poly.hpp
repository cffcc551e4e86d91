#pragma once

#include <map>
#include <string>
#include <vector>

#include "cps/gf.hpp"

namespace cps {

// Degree-d monomials in n+1 variables x_0..x_n, listed in descending
// graded-lex order with x_0 > x_1 > ... > x_n (so x_0^d comes first).
// This order is fixed across bases, reports and CSV columns.
struct MonomialTable {
    int n, d;
    std::vector<std::vector<int>> expo;
    std::map<std::vector<int>, int> rank;

    int index_of(const std::vector<int>& e) const;
    std::size_t size() const { return expo.size(); }
};

const MonomialTable& monos(int n, int d);

// Homogeneous polynomial over F_q, dense in the monomial order above.
struct HomogPoly {
    FieldPtr k;
    int n = 0, d = 0;
    std::vector<felem> c;

    bool is_zero() const;
};

HomogPoly hp_zero(FieldPtr k, int n, int d);
HomogPoly hp_monomial(FieldPtr k, int n, const std::vector<int>& expo, felem coeff);
HomogPoly hp_add(const HomogPoly& a, const HomogPoly& b);
HomogPoly hp_scale(const HomogPoly& a, felem s);
HomogPoly hp_mul(const HomogPoly& a, const HomogPoly& b);
HomogPoly hp_partial(const HomogPoly& f, int var);
// f(M x) for an (n+1)x(n+1) matrix over the coefficient field
HomogPoly hp_subst_linear(const HomogPoly& f, const std::vector<std::vector<felem>>& M);

// Evaluate at a point with coordinates in an extension E of the coefficient
// field; emb is the base->E embedding table.
felem hp_eval(const HomogPoly& f, const Field& E, const std::vector<felem>& emb,
              const felem* coords);

std::string hp_to_string(const HomogPoly& f);

// ---------------------------------------------------------------------------
// univariate polynomials over F_q (index = degree)

struct UPoly {
    FieldPtr k;
    std::vector<felem> c;
};

int up_deg(const UPoly& f); // -1 for the zero polynomial
void up_trim(UPoly& f);
bool up_is_zero(const UPoly& f);
UPoly up_add(const UPoly& a, const UPoly& b);
UPoly up_sub(const UPoly& a, const UPoly& b);
UPoly up_mul(const UPoly& a, const UPoly& b);
UPoly up_scale(const UPoly& a, felem s);
// quotient; remainder written to *rem if non-null. b must be nonzero.
UPoly up_divrem(const UPoly& a, const UPoly& b, UPoly* rem);
UPoly up_gcd(UPoly a, UPoly b); // monic
UPoly up_monic(const UPoly& a);

// ---------------------------------------------------------------------------
// homogeneous bivariate polynomials g(y, z) of declared degree, stored as
// the univariate u(t) = g(t, 1); the z-multiplicity is deg - deg(u)

struct BivH {
    FieldPtr k;
    int deg = 0;
    UPoly u;
};

bool bh_is_zero(const BivH& a);
bool bh_is_const(const BivH& a); // nonzero of homogeneous degree 0
BivH bh_const(FieldPtr k, felem v);
BivH bh_mul(const BivH& a, const BivH& b);
BivH bh_add(const BivH& a, const BivH& b); // same declared degree
BivH bh_sub(const BivH& a, const BivH& b);
BivH bh_neg(const BivH& a);
BivH bh_gcd(const BivH& a, const BivH& b); // monic in t, degree adjusted by z-valuation
BivH bh_divexact(const BivH& a, const BivH& b);

// ---------------------------------------------------------------------------
// homogeneous trivariate polynomials f(x, y, z), x-major: cx[j] is the
// (bivariate, homogeneous of degree deg - j) coefficient of x^j

struct TrivH {
    FieldPtr k;
    int deg = -1; // -1 encodes the zero polynomial
    std::vector<BivH> cx;
};

TrivH th_zero(FieldPtr k);
TrivH th_from(const HomogPoly& f); // requires n == 2
HomogPoly th_to(const TrivH& t, int degree_hint = -1);
bool th_is_zero(const TrivH& t);
int th_xdeg(const TrivH& t);
inline int th_deg(const TrivH& t) { return t.deg; }
TrivH th_normalize(TrivH t); // leading coefficient made monic
TrivH th_gcd(const TrivH& a, const TrivH& b); // primitive PRS, normalized
TrivH th_divexact(const TrivH& a, const TrivH& b);

// gcd(f, f_x, f_y, f_z), skipping identically-zero partials. Nonconstant
// exactly when f has a repeated factor (or is a p-th power, in which case
// the result is f itself). Requires f != 0 in 3 variables.
TrivH repeated_part(const HomogPoly& f);
bool is_squarefree(const HomogPoly& f);

// true iff some irreducible factor of g does not divide h
bool th_has_factor_off(TrivH g, const TrivH& h);
// true iff g and h share a nonconstant common factor
bool th_shares_factor(const TrivH& a, const TrivH& b);

} // namespace cps
