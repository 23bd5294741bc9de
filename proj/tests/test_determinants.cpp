#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "exact.hpp"
#include "laplace.hpp"

#include "opuc/asymptotics.hpp"
#include "opuc/determinants.hpp"
#include "opuc/errors.hpp"
#include "opuc/roots.hpp"
#include "opuc/verify.hpp"

#include <cmath>
#include <random>

using namespace opuc;
using oracle::frac;
using oracle::Rational;

namespace {

Complex draw(std::mt19937_64& gen)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double re = u(gen);
    return {re, u(gen)};
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace

TEST_CASE("small cases")
{
    CHECK(delta_direct({{}, 0.7}) == Complex(1.0));
    CHECK(delta_recursive({{}, 0.7}) == Complex(1.0));
    CHECK(delta_expanded({{}, 0.7}) == Complex(1.0));
    const DeterminantSpec one{{Complex(0.2, 0.1)}, Complex(0.5, -0.3)};
    CHECK(delta_direct(one) == one.z + one.x[0]);
    CHECK(delta_recursive(one) == one.z + one.x[0]);
    const DeterminantSpec two{{1.0, 2.0}, 1.0};
    CHECK(delta_direct(two) == Complex(4.0));
    CHECK(delta_recursive(two) == Complex(4.0));
    CHECK(delta_expanded(two) == Complex(4.0));
    const DeterminantSpec zeros{{0.0, 0.0, 0.0}, Complex(0.5, 0.5)};
    CHECK(std::abs(delta_recursive(zeros) - std::pow(zeros.z, 3)) < 1e-15);
    CHECK(std::abs(delta_direct(zeros) - std::pow(zeros.z, 3)) < 1e-15);
}

TEST_CASE("matrix layout")
{
    const auto a = delta_matrix({{1.0, 2.0, 3.0}, 0.5});
    CHECK(a[0][0] == Complex(1.5));
    CHECK(a[0][1] == Complex(1.0));  // z x_2
    CHECK(a[1][2] == Complex(1.5));  // z x_3
    CHECK(a[1][0] == Complex(1.0));
    CHECK(a[2][0] == Complex(0.0));
}

TEST_CASE("property: all forms agree with cofactor expansion, m <= 8")
{
    std::mt19937_64 gen(0);
    for (int t = 0; t < 100; ++t) {
        for (int m = 0; m <= 8; ++m) {
            DeterminantSpec s;
            for (int j = 0; j < m; ++j) {
                s.x.push_back(draw(gen));
            }
            s.z = draw(gen);
            const Complex ref = oracle::laplace_determinant(delta_matrix(s));
            CHECK(rel(delta_direct(s), ref) < 1e-10);
            CHECK(rel(delta_recursive(s), ref) < 1e-10);
            CHECK(rel(delta_expanded(s), ref) < 1e-10);
            if (m > 0) {
                CHECK(rel(lu_determinant(delta_matrix(s)), ref) < 1e-10);
            }
        }
    }
}

TEST_CASE("exact rational agreement")
{
    // x = (1/2, -3, 2/5), z = 7/3 by hand-free cofactor expansion in Q
    const std::vector<Rational> x = {frac(1, 2), Rational(-3), frac(2, 5)};
    const Rational z = frac(7, 3);
    std::vector<std::vector<Rational>> a(3, std::vector<Rational>(3, Rational(0)));
    for (int i = 0; i < 3; ++i) {
        a[i][i] = z + x[i];
        if (i + 1 < 3) {
            a[i][i + 1] = z * x[i + 1];
            a[i + 1][i] = Rational(1);
        }
    }
    const Rational det = oracle::laplace_determinant(a);
    // z^3 + x1 z^2 + x1 x2 z + x1 x2 x3
    CHECK(det == z * z * z + x[0] * z * z + x[0] * x[1] * z + x[0] * x[1] * x[2]);
}

TEST_CASE("bls polynomial")
{
    const std::vector<Complex> one = {2.0};
    CHECK(bls_polynomial(one) == ComplexPoly({1.0, 0.5}));
    CHECK_THROWS_AS(bls_polynomial(std::vector<Complex>{1.0, 0.0}), Error);

    std::mt19937_64 gen(3);
    for (int t = 0; t < 10; ++t) {
        std::vector<Complex> x;
        for (int j = 0; j < 5; ++j) {
            x.push_back(draw(gen));
        }
        const ComplexPoly p = bls_polynomial(x);
        Complex prod = 1.0;
        for (const Complex& v : x) {
            prod *= v;
        }
        for (int k = 0; k < 20; ++k) {
            const Complex z = draw(gen);
            CHECK(rel(p(z) * prod, delta_expanded({x, z})) < 1e-12);
        }
        // roots of the normalized polynomial are zeros of Delta_m
        for (const Complex& r : find_roots(p).roots) {
            DeterminantSpec s{x, r};
            double scale = 0.0;
            for (const Complex& c : p.coeffs()) {
                scale += std::abs(c) * std::pow(std::abs(r), 5);
            }
            CHECK(std::abs(delta_expanded(s)) <= 1e-10 * std::abs(prod) * (1.0 + scale));
        }
    }
}

TEST_CASE("bls nodes reproduce W_ell exactly in Q")
{
    const std::vector<Rational> c = {Rational(-1), Rational(-1), Rational(3), frac(1, 3)};
    const Rational b = frac(1, 2);
    for (int ell = 0; ell < 4; ++ell) {
        const auto x = bls_nodes<Rational>(b, c, ell);
        CHECK(bls_coeffs<Rational>(x) == w_ell_coeffs<Rational>(b, c, ell));
    }
    const auto w2 = w_ell_coeffs<Rational>(b, c, 2);
    CHECK(w2 == std::vector<Rational>{Rational(1), Rational(-2), Rational(-12), Rational(-8)});
}

TEST_CASE("bls nodes reproduce W_ell in double")
{
    const std::vector<Complex> c = {-1.0, -1.0, 3.0, 1.0 / 3.0};
    for (int ell = 0; ell < 4; ++ell) {
        CHECK(bls_polynomial(bls_nodes<Complex>(0.5, c, ell)) == w_ell(0.5, c, ell));
    }
}
