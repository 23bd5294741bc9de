#pragma once

#include <complex>
#include <span>
#include <vector>

namespace opuc {

using Complex = std::complex<double>;

// Integer power by repeated squaring. Exact for powers of two, and more
// accurate than std::pow(complex, int) which goes through exp/log.
Complex ipow(Complex base, long long exponent);
double ipow(double base, long long exponent);

// Dense polynomial with complex coefficients, coeffs[k] multiplies z^k.
// The stored vector never ends in an exact zero; the zero polynomial is the
// empty vector and reports degree -1.
class ComplexPoly {
public:
    ComplexPoly() = default;
    explicit ComplexPoly(std::vector<Complex> coeffs);

    static ComplexPoly constant(Complex c);
    static ComplexPoly monomial(int degree, Complex c = 1.0);
    static ComplexPoly from_roots(std::span<const Complex> roots, Complex leading = 1.0);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Complex>& coeffs() const { return coeffs_; }
    Complex coeff(int k) const;
    Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }

    Complex operator()(Complex z) const;
    // Returns p(z) and writes p'(z).
    Complex eval_with_derivative(Complex z, Complex& derivative) const;
    // Sum |a_k| |z|^k, the scale of Horner rounding error at z.
    double abs_eval(double r) const;

    ComplexPoly derivative() const;
    // z^n conj(p(1/conj z)) for a given formal degree n >= degree().
    ComplexPoly reversed(int n) const;
    double max_abs_coeff() const;

    ComplexPoly& operator+=(const ComplexPoly& rhs);
    ComplexPoly& operator-=(const ComplexPoly& rhs);
    ComplexPoly& operator*=(Complex s);

    friend ComplexPoly operator+(ComplexPoly lhs, const ComplexPoly& rhs) { return lhs += rhs; }
    friend ComplexPoly operator-(ComplexPoly lhs, const ComplexPoly& rhs) { return lhs -= rhs; }
    friend ComplexPoly operator*(ComplexPoly lhs, Complex s) { return lhs *= s; }
    friend ComplexPoly operator*(Complex s, ComplexPoly rhs) { return rhs *= s; }
    friend ComplexPoly operator*(const ComplexPoly& lhs, const ComplexPoly& rhs);

    // Multiply by (z - a).
    ComplexPoly times_linear(Complex a) const;
    // Multiply by z^k.
    ComplexPoly shifted(int k) const;

    bool operator==(const ComplexPoly&) const = default;

private:
    void trim();
    std::vector<Complex> coeffs_;
};

} // namespace opuc
