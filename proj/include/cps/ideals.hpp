#pragma once

#include "cps/geometry.hpp"
#include "cps/linalg.hpp"

namespace cps {

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class BasisMethod { generator_multiples, point_evaluation };

// Basis of I_d (degree-d forms vanishing on Z) in reduced row echelon form
// over the monomial order of monos(n, d); rows are canonical for the span.
struct GradedBasis {
    FieldPtr k;
    int n = 2, d = 0;
    std::vector<std::vector<felem>> rows;
    BasisMethod method = BasisMethod::generator_multiples;
    int eval_degree_bound = 0; // point-evaluation truncation, 0 for multiples

    int dim() const { return static_cast<int>(rows.size()); }
    HomogPoly poly(int i, const TowerPtr& tower) const;
};

// generator_multiples spans {m g_i : deg m + deg g_i = d} (needs a saturated
// presentation); point_evaluation takes the kernel of evaluation at all
// closed points of Z of degree <= eval_bound (default d+1; needs Z reduced)
GradedBasis graded_piece(const Scheme& Z, int d, BasisMethod method, int eval_bound = -1,
                         std::uint64_t budget = kDefaultEnumBudget);

// both methods, spans must coincide; disagreement flags a bad fixture
GradedBasis graded_piece_certified(const Scheme& Z, int d,
                                   std::uint64_t budget = kDefaultEnumBudget);

// least c <= d_max with dim(S_1 I_d) == dim I_{d+1} for every c <= d <= d_max
int find_c(const Scheme& Z, int d_max, std::uint64_t budget = kDefaultEnumBudget);

// finite set Y of closed points with the admissible value tuples T
struct LocalConditions {
    std::vector<ClosedPoint> components;
    std::vector<std::vector<felem>> admissible; // each tuple has one code per component
};

// checks Z cap Y = empty, tuple shapes, code ranges
void validate_local_conditions(const Scheme& Z, const LocalConditions& Y);

// number of global sections of O_Y: prod q^(deg Y_i)
unsigned long long h0_size(const LocalConditions& Y, std::uint64_t q);

// f|_Y: on each component the value of x_j^{-d} f, j the leading coordinate
// of the component (its chart); with normalized representatives this is
// plain evaluation at the representative
std::vector<felem> restrict_to_Y(const HomogPoly& f, const LocalConditions& Y);

// first-order jet of f at P relative to U, expanded over F_q: the value
// f(rep) followed by the gradient paired against a tangent basis of U,
// (m+1) residue-field entries of deg P coordinates each
std::vector<felem> jet_coords(const Scheme& U, const ClosedPoint& P, const HomogPoly& f);

// cardinality of the image of I_d -> H^0(O_C(d)), C the first-order
// neighbourhood of P in U; q^rank of the stacked jet coordinates
unsigned long long jet_image_size(const Scheme& Z, const Scheme& U, const ClosedPoint& P, int d,
                                  int certification_degree = -1,
                                  std::uint64_t budget = kDefaultEnumBudget);

} // namespace cps
