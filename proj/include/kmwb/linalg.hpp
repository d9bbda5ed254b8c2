#pragma once

#include <vector>

#include "kmwb/rational.hpp"

namespace kmwb {

enum class SolveStatus { Unique, Inconsistent, Underdetermined };

struct SolveResult {
    SolveStatus status = SolveStatus::Inconsistent;
    RatVec x;
};

/// Exact Gaussian elimination on [A | b]; A may be rectangular.
inline SolveResult gauss_solve(std::vector<RatVec> a, RatVec b) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    std::vector<int> pivot_col_of_row;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[row]);
        std::swap(b[piv], b[row]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == row || a[i][col] == 0) continue;
            Rat f = a[i][col] / a[row][col];
            for (size_t j = col; j < cols; ++j) a[i][j] -= f * a[row][j];
            b[i] -= f * b[row];
        }
        pivot_col_of_row.push_back(static_cast<int>(col));
        ++row;
    }
    for (size_t i = row; i < rows; ++i)
        if (b[i] != 0) return {SolveStatus::Inconsistent, {}};
    if (pivot_col_of_row.size() < cols) return {SolveStatus::Underdetermined, {}};
    RatVec x(cols, Rat(0));
    for (size_t i = 0; i < pivot_col_of_row.size(); ++i) {
        size_t c = static_cast<size_t>(pivot_col_of_row[i]);
        x[c] = b[i] / a[i][c];
    }
    return {SolveStatus::Unique, std::move(x)};
}

inline int matrix_rank(std::vector<RatVec> a) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    int rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[row]);
        for (size_t i = row + 1; i < rows; ++i) {
            if (a[i][col] == 0) continue;
            Rat f = a[i][col] / a[row][col];
            for (size_t j = col; j < cols; ++j) a[i][j] -= f * a[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

}  // namespace kmwb
