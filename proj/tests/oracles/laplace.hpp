#pragma once

// Cofactor expansion along the first row. Exponential cost, only for m <= 8.

#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

template <class T>
T laplace_determinant(const std::vector<std::vector<T>>& a)
{
    const std::size_t m = a.size();
    if (m == 0) {
        return T(1);
    }
    if (m == 1) {
        return a[0][0];
    }
    T det(0);
    for (std::size_t col = 0; col < m; ++col) {
        if (a[0][col] == T(0)) {
            continue;
        }
        std::vector<std::vector<T>> minor;
        for (std::size_t i = 1; i < m; ++i) {
            std::vector<T> row;
            for (std::size_t j = 0; j < m; ++j) {
                if (j != col) {
                    row.push_back(a[i][j]);
                }
            }
            minor.push_back(row);
        }
        const T term = a[0][col] * laplace_determinant(minor);
        det += col % 2 ? -term : term;
    }
    return det;
}

} // namespace oracle
