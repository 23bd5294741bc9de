#include "opuc/complex_poly.hpp"

#include <algorithm>
#include <cmath>

namespace opuc {

namespace {

template <typename T>
T power_by_squaring(T base, long long exponent)
{
    if (exponent < 0) {
        return T(1) / power_by_squaring(base, -exponent);
    }
    T result(1);
    while (exponent > 0) {
        if (exponent & 1) {
            result *= base;
        }
        base *= base;
        exponent >>= 1;
    }
    return result;
}

} // namespace

Complex ipow(Complex base, long long exponent) { return power_by_squaring(base, exponent); }
double ipow(double base, long long exponent) { return power_by_squaring(base, exponent); }

ComplexPoly::ComplexPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

ComplexPoly ComplexPoly::constant(Complex c) { return ComplexPoly({c}); }

ComplexPoly ComplexPoly::monomial(int degree, Complex c)
{
    std::vector<Complex> v(static_cast<std::size_t>(degree) + 1, Complex{});
    v.back() = c;
    return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::from_roots(std::span<const Complex> roots, Complex leading)
{
    std::vector<Complex> v{leading};
    for (const Complex& r : roots) {
        v.push_back(Complex{});
        for (std::size_t k = v.size() - 1; k > 0; --k) {
            v[k] = v[k - 1] - r * v[k];
        }
        v[0] = -r * v[0];
    }
    return ComplexPoly(std::move(v));
}

Complex ComplexPoly::coeff(int k) const
{
    if (k < 0 || k > degree()) {
        return {};
    }
    return coeffs_[static_cast<std::size_t>(k)];
}

Complex ComplexPoly::operator()(Complex z) const
{
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

Complex ComplexPoly::eval_with_derivative(Complex z, Complex& derivative) const
{
    Complex p{};
    Complex dp{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
    derivative = dp;
    return p;
}

double ComplexPoly::abs_eval(double r) const
{
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * r + std::abs(*it);
    }
    return acc;
}

ComplexPoly ComplexPoly::derivative() const
{
    if (coeffs_.size() <= 1) {
        return {};
    }
    std::vector<Complex> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        d[k - 1] = coeffs_[k] * static_cast<double>(k);
    }
    return ComplexPoly(std::move(d));
}

ComplexPoly ComplexPoly::reversed(int n) const
{
    std::vector<Complex> v(static_cast<std::size_t>(n) + 1, Complex{});
    for (int k = 0; k <= degree(); ++k) {
        v[static_cast<std::size_t>(n - k)] = std::conj(coeffs_[static_cast<std::size_t>(k)]);
    }
    return ComplexPoly(std::move(v));
}

double ComplexPoly::max_abs_coeff() const
{
    double m = 0.0;
    for (const Complex& c : coeffs_) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

ComplexPoly& ComplexPoly::operator+=(const ComplexPoly& rhs)
{
    if (rhs.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size());
    }
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) {
        coeffs_[k] += rhs.coeffs_[k];
    }
    trim();
    return *this;
}

ComplexPoly& ComplexPoly::operator-=(const ComplexPoly& rhs)
{
    if (rhs.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size());
    }
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) {
        coeffs_[k] -= rhs.coeffs_[k];
    }
    trim();
    return *this;
}

ComplexPoly& ComplexPoly::operator*=(Complex s)
{
    for (Complex& c : coeffs_) {
        c *= s;
    }
    trim();
    return *this;
}

ComplexPoly operator*(const ComplexPoly& lhs, const ComplexPoly& rhs)
{
    if (lhs.is_zero() || rhs.is_zero()) {
        return {};
    }
    std::vector<Complex> v(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, Complex{});
    for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            v[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
        }
    }
    return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::times_linear(Complex a) const
{
    if (is_zero()) {
        return {};
    }
    std::vector<Complex> v(coeffs_.size() + 1, Complex{});
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        v[k + 1] += coeffs_[k];
        v[k] -= a * coeffs_[k];
    }
    return ComplexPoly(std::move(v));
}

ComplexPoly ComplexPoly::shifted(int k) const
{
    if (is_zero()) {
        return {};
    }
    std::vector<Complex> v(static_cast<std::size_t>(k), Complex{});
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return ComplexPoly(std::move(v));
}

void ComplexPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == Complex{}) {
        coeffs_.pop_back();
    }
}

} // namespace opuc
