#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opuc/coeffseq.hpp"
#include "opuc/errors.hpp"
#include "opuc/fit.hpp"

#include <cmath>
#include <numbers>

using namespace opuc;

namespace {

// alpha_n = (1/2)^{n+1} (1 + 2 cos(pi (n+1) / 2)) straight from the formula
double cosine_formula(int n)
{
    // reduce the angle mod 2 pi first; cos of a large multiple of pi/2 picks up rounding
    return std::pow(0.5, n + 1) * (1.0 + 2.0 * std::cos(std::numbers::pi * ((n + 1) % 4) / 2.0));
}

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

} // namespace

TEST_CASE("alpha examples")
{
    CHECK(families::single_geometric().alpha(3) == Complex(0.0625));
    CHECK(families::cosine_modulated().alpha(1) == Complex(-0.25));
    CHECK(CoefficientFamily(Table{}).alpha(5) == Complex(0.0));
    CHECK(CoefficientFamily(Pure{0.5, 0.5}).alpha(0) == Complex(0.5));
}

TEST_CASE("cosine family matches its closed form")
{
    const auto e = families::cosine_modulated();
    const auto r = families::cosine_modulated_ratios();
    for (int n = 0; n < 200; ++n) {
        const double ref = cosine_formula(n);
        CHECK(std::abs(e.alpha(n) - ref) <= 1e-15 * std::pow(0.5, n));
        CHECK(std::abs(r.alpha(n) - ref) <= 1e-14 * std::pow(0.5, n));
    }
}

TEST_CASE("verblunsky violation")
{
    CHECK(code_of([] { CoefficientFamily(Table{{0.5, 1.0}}).alpha(1); }) == ErrorCode::VerblunskyViolation);
    CHECK(code_of([] { CoefficientFamily(Pure{0.5, 2.0}).alpha(0); }) == ErrorCode::VerblunskyViolation);
}

TEST_CASE("ratios")
{
    const auto e = families::cosine_modulated();
    // n = 4m + 1 window: limits b c_1..b c_4
    const auto r = ratios(e, 101, 4);
    const Complex limit[4] = {-0.5, -0.5, 1.5, 1.0 / 6.0};
    for (int j = 0; j < 4; ++j) {
        CHECK(std::abs(r[j] - limit[j]) < 1e-12);
    }
    for (const Complex& x : ratios(CoefficientFamily(Pure{0.3, 0.7}), 7, 3)) {
        CHECK(std::abs(x - 0.3) < 1e-15);
    }
    // finite n, the exact family has no remainder
    const auto r9 = ratios(e, 9, 4);
    for (int j = 0; j < 4; ++j) {
        CHECK(std::abs(r9[j] - cosine_formula(9 + j) / cosine_formula(8 + j)) < 1e-14);
    }
    CHECK(code_of([] { ratios(CoefficientFamily(Table{{0.5, 0.0, 0.1}}), 2, 1); }) == ErrorCode::RatioUndefined);
}

TEST_CASE("infer_model")
{
    const DecayModel m = infer_model(families::cosine_modulated());
    CHECK(m.b == 0.5);
    REQUIRE(m.size() == 3);
    CHECK(m.nodes[0] == Complex(0.5, 0));
    CHECK(m.nodes[1] == Complex(0, 0.5));
    CHECK(m.nodes[2] == Complex(0, -0.5));
    // Euler expansion: 2 cos t = e^{it} + e^{-it}, so C = (1/2, i/2, -i/2)
    CHECK(m.amplitudes[0] == Complex(0.5, 0));
    CHECK(m.amplitudes[1] == Complex(0, 0.5));
    CHECK(m.amplitudes[2] == Complex(0, -0.5));
    for (std::size_t l = 0; l < 3; ++l) {
        CHECK(std::abs(std::abs(m.omega(l)) - 1.0) < 1e-15);
    }

    const DecayModel p = infer_model(CoefficientFamily(Pure{0.5, 0.5}));
    CHECK(p.size() == 1);
    CHECK(p.amplitudes[0] == Complex(0.5));
    CHECK(p.nodes[0] == Complex(0.5));

    CHECK(code_of([] { infer_model(CoefficientFamily(Table{{0.1}})); }) == ErrorCode::ModelUnavailable);
    CHECK(code_of([] { infer_model(families::cosine_modulated_ratios()); }) == ErrorCode::ModelUnavailable);
}

TEST_CASE("model validation")
{
    DecayModel m;
    m.b = 0.5;
    m.nodes = {0.5, 0.5};
    m.amplitudes = {1.0, 1.0};
    CHECK_THROWS_AS(m.validate(), Error); // repeated node
    m.nodes = {0.5, 0.4};
    CHECK_THROWS_AS(m.validate(), Error); // wrong modulus
    m.nodes = {0.5, Complex(0, 0.5)};
    m.amplitudes = {1.0, 0.0};
    CHECK_THROWS_AS(m.validate(), Error); // zero amplitude
}

TEST_CASE("periodic ratio product must be one")
{
    CHECK_THROWS_AS(CoefficientFamily(PeriodicRatio{0.5, {-1.0, 2.0}, 0.5}), Error);
    CHECK_NOTHROW(CoefficientFamily(PeriodicRatio{0.5, {-1.0, -1.0, 3.0, 1.0 / 3.0}, 0.5}));
}

TEST_CASE("property: remainder decays like (b Delta)^n")
{
    ExpSum e;
    e.model = infer_model(families::cosine_modulated());
    e.model.delta = 0.6;
    Remainder rem;
    rem.amplitude = 0.2;
    rem.seeded = true;
    rem.seed = 3;
    e.remainder = rem;
    const CoefficientFamily fam(e);
    std::vector<double> ns;
    std::vector<double> bound;
    for (int n = 0; n < 120; ++n) {
        const double r = std::abs(fam.alpha(n) - e.model.leading_sum(n));
        CHECK(r <= 0.2 * std::pow(0.3, n) * (1.0 + 1e-12));
        CHECK(std::abs(fam.alpha(n)) < 1.0);
    }
    // same seed, same sequence
    const CoefficientFamily again(e);
    for (int n = 0; n < 50; ++n) {
        CHECK(fam.alpha(n) == again.alpha(n));
    }
}

TEST_CASE("property: p consecutive ratios multiply to b^p")
{
    const auto r = families::cosine_modulated_ratios();
    for (int n = 1; n < 60; ++n) {
        Complex prod = 1.0;
        for (const Complex& x : ratios(r, n, 4)) {
            prod *= x;
        }
        CHECK(std::abs(prod - 0.0625) < 1e-14);
    }
}

TEST_CASE("alpha_scaled survives under- and overflow")
{
    const auto fam = families::single_geometric();
    // 0.5^{1201} underflows, 3^{1200} overflows; the product is (1.5)^{1200} / 2
    const Complex v = fam.alpha_scaled(1200, 3.0);
    CHECK(std::isfinite(v.real()));
    CHECK(std::log(v.real()) == doctest::Approx(1200 * std::log(1.5) - std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("alpha stream agrees with alpha_scaled")
{
    const auto fam = families::cosine_modulated();
    const Complex s(0.9, 0.7);
    AlphaStream st(fam, s);
    for (int k = 0; k < 300; ++k) {
        const Complex a = st.next();
        const Complex b = fam.alpha_scaled(k, s);
        CHECK(std::abs(a - b) <= 1e-12 * std::abs(b) + 1e-300);
    }
}

TEST_CASE("ratio limit data")
{
    const auto g = geometric_ratio_limit(0.5);
    CHECK(g.beta(3) == 8.0);
    const std::vector<Complex> c = {-1.0, -1.0, 3.0, 1.0 / 3.0};
    const auto p = periodic_ratio_limit(0.5, c, 2);
    // beta_1 = conj(b c_1)^{-1}
    CHECK(std::abs(p.beta(1) - (-2.0)) < 1e-15);
    CHECK(std::abs(p.beta(5) - p.beta(1) * 16.0) < 1e-12);
    CHECK(cyclic(c, 0) == Complex(1.0 / 3.0));
    CHECK(cyclic(c, 5) == Complex(-1.0));
}
