#include "opuc/determinants.hpp"

namespace opuc {

Complex delta_direct(const DeterminantSpec& spec)
{
    Complex prev2 = 1.0; // Delta_{m-2}, with Delta_{-1} unused
    Complex prev = 1.0;  // Delta_0
    for (std::size_t m = 1; m <= spec.x.size(); ++m) {
        const Complex xm = spec.x[m - 1];
        const Complex cur = m == 1 ? spec.z + xm : (spec.z + xm) * prev - spec.z * xm * prev2;
        prev2 = prev;
        prev = cur;
    }
    return prev;
}

Complex delta_recursive(const DeterminantSpec& spec)
{
    Complex value = 1.0;
    Complex prod = 1.0;
    for (const Complex& xm : spec.x) {
        prod *= xm;
        value = spec.z * value + prod;
    }
    return value;
}

Complex delta_expanded(const DeterminantSpec& spec)
{
    // coefficient of z^{m-k} is x_1 ... x_k
    std::vector<Complex> partial{1.0};
    for (const Complex& xm : spec.x) {
        partial.push_back(partial.back() * xm);
    }
    Complex acc{};
    for (const Complex& c : partial) {
        acc = acc * spec.z + c;
    }
    return acc;
}

std::vector<std::vector<Complex>> delta_matrix(const DeterminantSpec& spec)
{
    const std::size_t m = spec.x.size();
    std::vector<std::vector<Complex>> a(m, std::vector<Complex>(m));
    for (std::size_t i = 0; i < m; ++i) {
        a[i][i] = spec.z + spec.x[i];
        if (i + 1 < m) {
            a[i][i + 1] = spec.z * spec.x[i + 1];
            a[i + 1][i] = 1.0;
        }
    }
    return a;
}

ComplexPoly bls_polynomial(std::span<const Complex> x) { return ComplexPoly(bls_coeffs<Complex>(x)); }

} // namespace opuc
