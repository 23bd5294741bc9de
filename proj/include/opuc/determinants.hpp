#pragma once

#include "opuc/complex_poly.hpp"
#include "opuc/errors.hpp"

#include <span>
#include <vector>

namespace opuc {

// Delta_m(z) for the m x m determinant built from x_1..x_m; m = 0 gives 1.
struct DeterminantSpec {
    std::vector<Complex> x;
    Complex z;
};

// Three-term recurrence Delta_m = (z + x_m) Delta_{m-1} - z x_m Delta_{m-2}.
Complex delta_direct(const DeterminantSpec& spec);
// Delta_m = z Delta_{m-1} + x_1 ... x_m.
Complex delta_recursive(const DeterminantSpec& spec);
// z^m + x_1 z^{m-1} + x_1 x_2 z^{m-2} + ... + x_1 ... x_m by Horner.
Complex delta_expanded(const DeterminantSpec& spec);

// The m x m matrix whose determinant is Delta_m: diagonal z + x_j,
// superdiagonal z x_{j+1}, subdiagonal 1.
std::vector<std::vector<Complex>> delta_matrix(const DeterminantSpec& spec);

// Coefficients [1, 1/x_m, 1/(x_m x_{m-1}), ..., 1/(x_1 ... x_m)].
template <class Field>
std::vector<Field> bls_coeffs(std::span<const Field> x)
{
    std::vector<Field> out;
    out.reserve(x.size() + 1);
    Field acc(1);
    out.push_back(acc);
    for (std::size_t k = x.size(); k-- > 0;) {
        if (x[k] == Field(0)) {
            raise(ErrorCode::ZeroFactor, "bls_polynomial: zero factor");
        }
        acc = acc / x[k];
        out.push_back(acc);
    }
    return out;
}

ComplexPoly bls_polynomial(std::span<const Complex> x);

// Nodes that turn the normalized determinant into W_ell:
// x_j = b c_{(ell + j) mod p}, j = 1..p-1, so that x_{m+1-j} = b c_{ell-j}.
template <class Field>
std::vector<Field> bls_nodes(const Field& b, std::span<const Field> c, int ell)
{
    const int p = static_cast<int>(c.size());
    std::vector<Field> x;
    for (int j = 1; j < p; ++j) {
        const int idx = (((ell + j - 1) % p) + p) % p;
        x.push_back(b * c[static_cast<std::size_t>(idx)]);
    }
    return x;
}

} // namespace opuc
