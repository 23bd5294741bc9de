#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opuc/kernels.hpp"
#include "opuc/recursion.hpp"
#include "opuc/roots.hpp"

#include <cstring>
#include <random>

#include <omp.h>

using namespace opuc;
namespace k = opuc::kernels;

namespace {

std::vector<Complex> points(std::uint64_t seed, int count, double r)
{
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-r, r);
    std::vector<Complex> out;
    for (int i = 0; i < count; ++i) {
        const double re = u(gen);
        out.emplace_back(re, u(gen));
    }
    return out;
}

bool bitwise_equal(const std::vector<Complex>& a, const std::vector<Complex>& b)
{
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(Complex)) == 0;
}

struct Threads {
    explicit Threads(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
    ~Threads() { omp_set_num_threads(saved); }
    int saved;
};

} // namespace

TEST_CASE("horner: serial and parallel are bitwise equal")
{
    const Threads t(4);
    const ComplexPoly p = monic_pair(families::cosine_modulated(), 90).phi;
    const auto pts = points(1, 1000, 1.0);
    std::vector<Complex> a(pts.size());
    std::vector<Complex> b(pts.size());
    k::serial::horner(p, pts, a);
    k::parallel::horner(p, pts, b);
    CHECK(bitwise_equal(a, b));
    CHECK(a[17] == p(pts[17]));
}

TEST_CASE("szego values: serial and parallel are bitwise equal")
{
    const Threads t(4);
    const auto alphas = families::cosine_modulated().alphas(150);
    const auto pts = points(2, 300, 1.0);
    const auto a = k::serial::szego_values(alphas, pts);
    const auto b = k::parallel::szego_values(alphas, pts);
    CHECK(a.steps == 150);
    CHECK(bitwise_equal(a.phi, b.phi));
    CHECK(bitwise_equal(a.phistar, b.phistar));
    const auto pair = monic_pair(families::cosine_modulated(), 150);
    CHECK(std::abs(a.phi_at(150, 3) - pair.phi(pts[3])) < 1e-12);
}

TEST_CASE("aberth corrections: serial and parallel are bitwise equal")
{
    const Threads t(4);
    const ComplexPoly p = monic_pair(families::single_geometric(), 64).phi;
    const auto roots = points(3, 64, 0.6);
    std::vector<std::uint8_t> active(64, 1);
    active[5] = 0;
    std::vector<Complex> a(64);
    std::vector<Complex> b(64);
    k::serial::aberth_corrections(p, roots, active, a);
    k::parallel::aberth_corrections(p, roots, active, b);
    CHECK(bitwise_equal(a, b));
    CHECK(a[5] == Complex(0.0));
}

TEST_CASE("outer limit scan: serial and parallel are bitwise equal")
{
    const Threads t(4);
    const auto fam = families::cosine_modulated();
    std::vector<Complex> pts;
    std::vector<int> steps;
    for (int i = 0; i < 200; ++i) {
        pts.push_back(std::polar(0.55 + 0.002 * i, 0.1 * i));
        steps.push_back(40 + i);
    }
    std::vector<Complex> a(pts.size());
    std::vector<Complex> b(pts.size());
    k::serial::outer_limit_scan(fam, pts, steps, a);
    k::parallel::outer_limit_scan(fam, pts, steps, b);
    CHECK(bitwise_equal(a, b));
    // the scaled form equals z^{-N} Phi_N(z) for moderate N
    const Complex direct = monic_pair(fam, steps[0]).phi(pts[0]) / std::pow(pts[0], steps[0]);
    CHECK(std::abs(a[0] - direct) < 1e-10 * std::abs(direct));
}

TEST_CASE("whole root solves do not depend on the thread count")
{
    const ComplexPoly p = monic_pair(families::cosine_modulated(), 120).phi;
    RootSet one;
    {
        const Threads t(1);
        one = find_roots(p);
    }
    const Threads t(4);
    CHECK(bitwise_equal(one.roots, find_roots(p).roots));
}
