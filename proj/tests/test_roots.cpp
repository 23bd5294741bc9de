#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opuc/errors.hpp"
#include "opuc/recursion.hpp"
#include "opuc/roots.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace opuc;

namespace {

// max over `expected` of the distance to the nearest computed root
double set_distance(const std::vector<Complex>& roots, const std::vector<Complex>& expected)
{
    double worst = 0.0;
    for (const Complex& e : expected) {
        double best = 1e300;
        for (const Complex& r : roots) {
            best = std::min(best, std::abs(r - e));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

std::vector<Complex> random_disk(std::uint64_t seed, int count)
{
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Complex> out;
    for (int k = 0; k < count; ++k) {
        out.push_back(std::polar(std::sqrt(u(gen)) * 0.95, 2.0 * 3.141592653589793 * u(gen)));
    }
    return out;
}

} // namespace

TEST_CASE("z^2 - 1")
{
    const RootSet rs = find_roots(ComplexPoly({-1.0, 0.0, 1.0}));
    REQUIRE(rs.roots.size() == 2);
    CHECK(set_distance(rs.roots, {1.0, -1.0}) < 1e-14);
}

TEST_CASE("W_2 of the worked example")
{
    const RootSet rs = find_roots(ComplexPoly({1.0, -2.0, -12.0, -8.0}));
    const double s2 = std::sqrt(2.0);
    CHECK(set_distance(rs.roots, {-0.5, (-1.0 - s2) / 2.0, (s2 - 1.0) / 2.0}) < 1e-12);
}

TEST_CASE("30 random roots in the disk")
{
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto expected = random_disk(seed, 30);
        const RootSet rs = find_roots(ComplexPoly::from_roots(expected));
        REQUIRE(rs.roots.size() == 30);
        CHECK(set_distance(rs.roots, expected) < 1e-8);
        CHECK(set_distance(expected, rs.roots) < 1e-8);
        CHECK(rs.sum_error < 1e-8);
        CHECK(rs.product_error < 1e-8);
        CHECK(rs.max_residual_ratio <= 1e-10);
    }
}

TEST_CASE("companion fallback agrees")
{
    const auto expected = random_disk(7, 20);
    const ComplexPoly p = ComplexPoly::from_roots(expected);
    RootOptions o;
    o.force_companion = true;
    const RootSet rs = find_roots(p, o);
    CHECK(rs.method == RootMethod::CompanionFallback);
    CHECK(set_distance(rs.roots, expected) < 1e-8);
    CHECK(set_distance(companion_roots(ComplexPoly({-1.0, 0.0, 0.0, 1.0})),
                       {1.0, std::polar(1.0, 2.0943951023931953), std::polar(1.0, -2.0943951023931953)}) < 1e-12);
}

TEST_CASE("iteration starved Aberth falls back")
{
    const auto expected = random_disk(9, 25);
    RootOptions o;
    o.max_iterations = 1;
    const RootSet rs = find_roots(ComplexPoly::from_roots(expected), o);
    CHECK(rs.method == RootMethod::CompanionFallback);
    CHECK(set_distance(rs.roots, expected) < 1e-8);
}

TEST_CASE("exact zero roots are split off")
{
    const RootSet rs = find_roots(ComplexPoly({0.0, 0.0, 0.0, -0.5, 1.0}));
    REQUIRE(rs.roots.size() == 4);
    CHECK(std::count(rs.roots.begin(), rs.roots.end(), Complex(0.0)) == 3);
    CHECK(set_distance(rs.roots, {0.5}) < 1e-15);
}

TEST_CASE("degree zero is rejected")
{
    CHECK_THROWS_AS(find_roots(ComplexPoly({3.0})), Error);
    CHECK_THROWS_AS(find_roots(ComplexPoly()), Error);
}

TEST_CASE("deterministic and thread-independent")
{
    const ComplexPoly p = monic_pair(families::cosine_modulated(), 60).phi;
    RootOptions serial;
    serial.parallel = false;
    const RootSet a = find_roots(p);
    const RootSet b = find_roots(p);
    const RootSet c = find_roots(p, serial);
    CHECK(a.roots == b.roots);
    CHECK(a.roots == c.roots);
}

TEST_CASE("sorted by argument then modulus")
{
    const RootSet rs = find_roots(monic_pair(families::single_geometric(), 40).phi);
    auto arg0 = [](Complex z) {
        const double a = std::arg(z);
        return a < 0 ? a + 2 * 3.141592653589793 : a;
    };
    for (std::size_t i = 1; i < rs.roots.size(); ++i) {
        CHECK(arg0(rs.roots[i - 1]) <= arg0(rs.roots[i]) + 1e-15);
    }
}

TEST_CASE("property: zeros of Phi_n lie in the open unit disk, Vieta holds")
{
    for (const auto& fam : {families::single_geometric(), families::cosine_modulated()}) {
        for (int n = 5; n <= 150; n += 29) {
            const RootSet rs = find_roots(monic_pair(fam, n).phi);
            CHECK(rs.roots.size() == static_cast<std::size_t>(n));
            for (const Complex& z : rs.roots) {
                CHECK(std::abs(z) < 1.0);
            }
            CHECK(rs.sum_error < 1e-8);
            CHECK(rs.product_error < 1e-8);
        }
    }
}

TEST_CASE("property: reversed polynomial has reciprocal-conjugate roots")
{
    const auto expected = random_disk(4, 12);
    const ComplexPoly p = ComplexPoly::from_roots(expected);
    const RootSet rs = find_roots(p.reversed(p.degree()));
    std::vector<Complex> reflected;
    for (const Complex& z : expected) {
        reflected.push_back(1.0 / std::conj(z));
    }
    CHECK(set_distance(rs.roots, reflected) < 1e-8 * 50);
}

TEST_CASE("polish")
{
    const PolishResult a = polish(ComplexPoly({-0.5, 1.0}), 0.4);
    CHECK(std::abs(a.root - 0.5) < 1e-15);
    CHECK_FALSE(a.multiple);

    const PolishResult b = polish(monic_pair(families::cosine_modulated(), 22).phi, 0.207);
    CHECK(std::abs(b.root - 0.20710678374) < 1e-9);

    const Complex r(0.3, 0.2);
    const PolishResult c = polish(ComplexPoly::from_roots(std::vector<Complex>{r, r}), Complex(0.35, 0.25));
    CHECK(c.multiple);
    CHECK(std::abs(c.root - r) < 1e-6);
}

TEST_CASE("clusters report multiplicity")
{
    const Complex r(0.1, -0.4);
    const RootSet rs = find_roots(ComplexPoly::from_roots(std::vector<Complex>{r, r, 0.7}));
    int doubled = 0;
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
        if (std::abs(rs.roots[i] - r) < 1e-6) {
            CHECK(rs.multiplicity[i] == 2);
            ++doubled;
        }
    }
    CHECK(doubled == 2);
}
