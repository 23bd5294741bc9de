#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "exact.hpp"
#include "highprec.hpp"

#include "opuc/asymptotics.hpp"
#include "opuc/errors.hpp"
#include "opuc/recursion.hpp"
#include "opuc/roots.hpp"

#include <cmath>

using namespace opuc;

namespace {

const double pi = 3.141592653589793;

ErrorCode code_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::Config;
}

struct Setup {
    CoefficientFamily fam;
    SzegoApprox approx;
    DecayModel model;
    AnnulusSpec annulus;
    explicit Setup(CoefficientFamily f)
        : fam(f), approx(f), model(infer_model(f)), annulus(estimate_delta1(approx, model).annulus())
    {
    }
};

} // namespace

TEST_CASE("u_n")
{
    CHECK(u_n(0.5, 0, 1.0) == Complex(2.0));
    const Complex v = u_n(Complex(0.0, 0.5), 4, 0.8);
    CHECK(std::abs(v - (1.0 / 16.0) / Complex(0.8, 0.5)) < 1e-16);
    CHECK(code_of([] { u_n(Complex(0.0, 0.5), 3, Complex(0.0, -0.5)); }) == ErrorCode::PoleHit);
    // recursion u_{n+1} = z u_n - conj(node)^n
    const Complex node(0.3, -0.4);
    const Complex z(0.1, 0.7);
    for (int n = 0; n < 10; ++n) {
        CHECK(std::abs(u_n(node, n + 1, z) - (z * u_n(node, n, z) - std::pow(std::conj(node), n))) < 1e-15);
    }
}

TEST_CASE("p_n for one term is conj(C)")
{
    const DecayModel m = infer_model(CoefficientFamily(Pure{0.5, Complex(0.3, 0.2)}));
    for (int n : {0, 1, 7}) {
        const ComplexPoly p = p_n(m, n);
        REQUIRE(p.degree() == 0);
        CHECK(std::abs(p.coeffs()[0] - Complex(0.3, -0.2)) < 1e-15);
    }
}

TEST_CASE("p_n for the cosine family")
{
    const DecayModel m = infer_model(families::cosine_modulated());
    CHECK(rotation_period(m) == 4);
    CHECK(rotation_period(infer_model(families::single_geometric())) == 1);
    for (long long n : {0LL, 4LL, 40LL}) {
        CHECK(p_n(m, n) == ComplexPoly({0.375, -0.5, 0.5}));
    }
    for (long long n : {2LL, 6LL, 102LL}) {
        CHECK(p_n(m, n) == ComplexPoly({-0.125, 0.5, 0.5}));
    }
    const auto om = class_omegas(m, 2);
    const ComplexPoly limit = p_infinity(m, om);
    const RootSet rs = find_roots(limit);
    double best = 1.0;
    for (const Complex& z : rs.roots) {
        best = std::min(best, std::abs(z - (std::sqrt(2.0) - 1.0) / 2.0));
    }
    CHECK(best < 1e-9);
    CHECK(code_of([&] { p_infinity(m, std::vector<Complex>{1.0}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("w_ell")
{
    using oracle::frac;
    using oracle::Rational;
    const std::vector<Rational> one = {Rational(7)};
    CHECK(w_ell_coeffs<Rational>(frac(1, 2), one, 0) == std::vector<Rational>{Rational(1)});
    const std::vector<Rational> c = {Rational(-1), Rational(-1), Rational(3), frac(1, 3)};
    const auto w1 = w_ell_coeffs<Rational>(frac(1, 2), c, 1);
    // 1 + z/(b c_4) + z^2/(b^2 c_4 c_3) + z^3/(b^3 c_4 c_3 c_2)
    CHECK(w1 == std::vector<Rational>{Rational(1), Rational(6), Rational(4), Rational(-8)});
    const std::vector<Complex> cd = {-1.0, -1.0, 3.0, 1.0 / 3.0};
    CHECK(w_ell(0.5, cd, 2) == ComplexPoly({1.0, -2.0, -12.0, -8.0}));
    CHECK(code_of([] { w_ell(0.5, std::vector<Complex>{1.0, 0.0}, 0); }) == ErrorCode::ZeroRatio);
}

TEST_CASE("ratio limit series")
{
    const Complex v = ratio_limit_series(geometric_ratio_limit(0.5), 0.2, 1.0);
    CHECK(std::abs(v + 5.0 / 3.0) < 1e-14);
    CHECK(code_of([] { ratio_limit_series(geometric_ratio_limit(0.5), 0.6, 1.0); }) == ErrorCode::OutsideDomain);
}

TEST_CASE("ratios need a nonzero coefficient")
{
    CHECK(code_of([] { alpha_ratio(families::free_case(), 5, 0.2); }) == ErrorCode::RatioUndefined);
    CHECK(code_of([] { reversed_ratio(families::single_geometric(), 0, 0.2); }) == ErrorCode::InvalidArgument);
    const auto fam = families::single_geometric();
    const auto pair = monic_pair(fam, 12);
    const Complex z(0.2, 0.1);
    CHECK(std::abs(alpha_ratio(fam, 12, z) - pair.phi(z) / std::conj(fam.alpha(11))) < 1e-12 * std::abs(alpha_ratio(fam, 12, z)));
}

TEST_CASE("error term against the 50-digit reference")
{
    const Setup s(families::cosine_modulated());
    for (int n : {10, 30, 60, 100}) {
        for (Complex z : {Complex(0.2, 0.0), Complex(0.1, 0.2), Complex(-0.25, -0.05)}) {
            const Complex ref = oracle::error_term_reference(n, z);
            const TildeQError e = tilde_q_error(s.approx, s.model, n, z);
            CHECK(std::abs(e.stable - ref) <= 1e-10 * std::abs(ref));
            if (n <= 30) {
                CHECK(std::abs(e.direct - ref) <= 1e-8 * std::abs(ref) + 1e-13);
            }
        }
    }
}

TEST_CASE("property: real coefficients give conjugation symmetry")
{
    const Setup s(families::cosine_modulated());
    for (int n : {5, 21, 50}) {
        for (Complex z : {Complex(0.2, 0.3), Complex(-0.1, 0.05), Complex(0.6, -0.6)}) {
            const Complex a = tilde_q(s.approx, s.model, n, z);
            const Complex b = tilde_q(s.approx, s.model, n, std::conj(z));
            CHECK(std::abs(a - std::conj(b)) <= 1e-12 * std::abs(a));
        }
    }
}

TEST_CASE("free case has R identically zero")
{
    const SzegoApprox approx(families::free_case());
    DecayModel empty;
    for (int n : {0, 3, 20}) {
        CHECK(r_n(approx, empty, n, Complex(0.3, 0.4)) == Complex(0.0));
    }
}

TEST_CASE("s_n satisfies its one-step recursion")
{
    const Setup s(CoefficientFamily(Pure{0.5, 0.5}));
    const Complex z = 0.55;
    const PointTrajectory traj(s.approx, s.model, z, 400);
    for (int n = 5; n < 40; n += 5) {
        const Complex a = s_n(traj, s.annulus, n).value;
        const Complex b = s_n(traj, s.annulus, n + 1).value;
        CHECK(std::abs(z * a - traj.r(n) - b) <= 1e-12 * std::abs(traj.r(n)));
    }
}

TEST_CASE("property: |s_n| stays within the tail bound")
{
    for (const auto& fam : {families::single_geometric(), families::cosine_modulated()}) {
        const Setup s(fam);
        for (double r : {0.4, 0.55, 0.7}) {
            const Complex z = std::polar(r, 0.3);
            if (r <= s.annulus.inner()) {
                continue;
            }
            for (int n : {10, 20, 40}) {
                const SeriesValue v = s_n(s.approx, s.model, s.annulus, n, z);
                CHECK(std::abs(v.value) <= v.tail.bound * 1.0001);
            }
        }
    }
}

TEST_CASE("critical decomposition")
{
    const Setup s(families::cosine_modulated());
    const Complex z = std::polar(0.5, pi / 4);
    double prev = 1e300;
    for (int n : {20, 30, 40}) {
        const auto d = critical_decomposition(s.approx, s.model, s.annulus, n, z);
        CHECK(d.residual < 1e-6);
        CHECK(d.residual <= prev);
        prev = d.residual;
        CHECK(std::abs(d.phi_value - monic_pair(s.fam, n).phi(z)) <= 1e-12);
    }
    // interior and outer terms blow up at the nodes but their sum does not
    const Complex node = std::conj(s.model.nodes[0]);
    const auto near = critical_decomposition(s.approx, s.model, s.annulus, 30, node * (1.0 + 1e-6));
    const double sum = std::abs(near.interior_term + near.outer_term);
    CHECK(std::abs(near.interior_term) > 1e3 * sum);
    CHECK(std::abs(near.outer_term) > 1e3 * sum);
}

TEST_CASE("continuation matches the limit outside b")
{
    const Setup s(families::cosine_modulated());
    for (double r : {0.56, 0.65}) {
        for (int k = 0; k < 8; ++k) {
            const Complex z = std::polar(r, pi / 8 + k * pi / 4);
            const Complex lim = s.approx.outer_limit(z);
            CHECK(std::abs(outer_continuation(s.approx, s.model, s.annulus, z) - lim) <= 1e-10 * std::abs(lim));
        }
    }
}

TEST_CASE("domain errors")
{
    const Setup s(families::single_geometric());
    const Complex inside = s.annulus.inner() * 0.5;
    CHECK(code_of([&] { s_n(s.approx, s.model, s.annulus, 10, inside); }) == ErrorCode::OutsideDomain);
    CHECK(code_of([&] { critical_decomposition(s.approx, s.model, s.annulus, 10, inside); }) ==
          ErrorCode::OutsideDomain);
    CHECK(code_of([&] { s_n(s.approx, s.model, s.annulus, 10, s.annulus.inner() * (1.0 + 1e-9)); }) ==
          ErrorCode::OutsideDomain);
    // a zero tolerance asks for an unbounded truncation
    CHECK(code_of([&] { tail_bound(s.annulus, 10, s.annulus.inner() * 1.1, 0.0); }) == ErrorCode::TailTooLarge);
    CHECK(tail_bound(s.annulus, 10, s.annulus.inner() * 1.1).J > 0);
    CHECK(code_of([&] { PointTrajectory(s.approx, s.model, 2.5, 10); }) == ErrorCode::OutsideDomain);
}
