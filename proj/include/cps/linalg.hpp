#pragma once

#include <vector>

#include "cps/gf.hpp"

namespace cps {

// Reduced row echelon form over F_q. Zero rows are dropped, pivots are 1,
// pivot columns are cleared above and below, rows ordered by pivot column.
// The result is the canonical basis of the row space.
struct RrefResult {
    std::vector<std::vector<felem>> rows;
    std::vector<int> pivots; // pivot column of each row
    int rank = 0;
};

RrefResult rref(const Field& k, std::vector<std::vector<felem>> rows);

int matrix_rank(const Field& k, std::vector<std::vector<felem>> rows);

// canonical basis of { v : M v = 0 } for the matrix with the given rows
std::vector<std::vector<felem>> kernel_basis(const Field& k,
                                             const std::vector<std::vector<felem>>& rows,
                                             std::size_t cols);

// reduce v against an RREF and test membership in the row space
bool in_rowspace(const Field& k, const RrefResult& R, std::vector<felem> v);

} // namespace cps
