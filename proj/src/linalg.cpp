#include "cps/linalg.hpp"

#include <algorithm>

namespace cps {

RrefResult rref(const Field& k, std::vector<std::vector<felem>> rows) {
    RrefResult out;
    if (rows.empty()) return out;
    std::size_t cols = rows[0].size();
    std::size_t row = 0;
    std::vector<int> pivots;
    for (std::size_t col = 0; col < cols && row < rows.size(); ++col) {
        std::size_t piv = row;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[row]);
        felem inv = k.inv(rows[row][col]);
        for (std::size_t j = col; j < cols; ++j) rows[row][j] = k.mul(rows[row][j], inv);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == row || rows[r][col] == 0) continue;
            felem f = rows[r][col];
            for (std::size_t j = col; j < cols; ++j)
                rows[r][j] = k.sub(rows[r][j], k.mul(f, rows[row][j]));
        }
        pivots.push_back(static_cast<int>(col));
        ++row;
    }
    rows.resize(row);
    out.rows = std::move(rows);
    out.pivots = std::move(pivots);
    out.rank = static_cast<int>(row);
    return out;
}

int matrix_rank(const Field& k, std::vector<std::vector<felem>> rows) {
    return rref(k, std::move(rows)).rank;
}

std::vector<std::vector<felem>> kernel_basis(const Field& k,
                                             const std::vector<std::vector<felem>>& rows,
                                             std::size_t cols) {
    RrefResult R = rref(k, rows);
    std::vector<bool> is_pivot(cols, false);
    for (int p : R.pivots) is_pivot[p] = true;
    std::vector<std::vector<felem>> basis;
    for (std::size_t j = 0; j < cols; ++j) {
        if (is_pivot[j]) continue;
        std::vector<felem> v(cols, 0);
        v[j] = k.one();
        for (std::size_t r = 0; r < R.rows.size(); ++r) v[R.pivots[r]] = k.neg(R.rows[r][j]);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool in_rowspace(const Field& k, const RrefResult& R, std::vector<felem> v) {
    for (std::size_t r = 0; r < R.rows.size(); ++r) {
        felem f = v[R.pivots[r]];
        if (f == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = k.sub(v[j], k.mul(f, R.rows[r][j]));
    }
    for (felem x : v)
        if (x != 0) return false;
    return true;
}

} // namespace cps
