#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opuc/asymptotics.hpp"
#include "opuc/errors.hpp"
#include "opuc/zeros.hpp"

#include <algorithm>
#include <cmath>

using namespace opuc;

namespace {

const double pi = 3.141592653589793;

struct Setup {
    CoefficientFamily fam;
    SzegoApprox approx;
    DecayModel model;
    ClassifyOptions opts;
    explicit Setup(CoefficientFamily f) : fam(f), approx(f), model(infer_model(f))
    {
        opts.nt_candidates = nt_zero_candidates(approx, model.b * 1.02, 0.995).points;
    }
    ZeroReport at(int n) const { return classify(approx, model, n, opts); }
};

std::vector<Complex> predicted(const DecayModel& m, long long n, double radius)
{
    std::vector<Complex> out;
    const ComplexPoly p = p_infinity(m, class_omegas(m, n % rotation_period(m)));
    if (p.degree() < 1) {
        return out;
    }
    for (const Complex& z : find_roots(p).roots) {
        if (std::abs(z) < radius) {
            out.push_back(z);
        }
    }
    return out;
}

} // namespace

TEST_CASE("labels")
{
    CHECK(to_string(ZeroClass::Interior) == "interior");
    CHECK(to_string(ZeroClass::Band) == "band");
    CHECK(to_string(ZeroClass::NevaiTotik) == "nt");
}

TEST_CASE("cosine family at n = 22")
{
    const Setup s(families::cosine_modulated());
    const ZeroReport r = s.at(22);
    CHECK(r.interior.size() == 1);
    CHECK(r.nt.size() == 3);
    CHECK(r.band.size() == 18);
    REQUIRE(r.interior.size() == 1);
    CHECK(std::abs(r.interior[0] - 0.20710678374) < 1e-9);
    CHECK(r.delta == doctest::Approx(0.1));
}

TEST_CASE("property: classes partition the zeros")
{
    for (const auto& fam : {families::single_geometric(), families::cosine_modulated()}) {
        const Setup s(fam);
        for (int n : {5, 17, 40, 81}) {
            const ZeroReport r = s.at(n);
            CHECK(r.zeros.roots.size() == static_cast<std::size_t>(n));
            CHECK(r.classes.size() == r.zeros.roots.size());
            CHECK(r.interior.size() + r.band.size() + r.nt.size() == static_cast<std::size_t>(n));
            CHECK(r.interior.size() + 1 <= s.model.size());
            for (std::size_t i = 0; i < r.classes.size(); ++i) {
                const double m = std::abs(r.zeros.roots[i]);
                if (r.classes[i] == ZeroClass::Interior) {
                    CHECK(m < s.model.b - r.delta);
                }
            }
            double total = 0.0;
            for (double d : r.spacing) {
                total += d;
            }
            if (!r.spacing.empty()) {
                CHECK(total == doctest::Approx(2 * pi).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("models are required")
{
    const SzegoApprox approx(families::free_case());
    CHECK_THROWS_AS(classify(approx, DecayModel{}, 10), Error);
    try {
        classify(approx, DecayModel{}, 10);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ModelUnavailable);
    }
    CHECK_THROWS_AS(infer_model(families::power_law(2)), Error);
    const Setup s(families::cosine_modulated());
    CHECK_THROWS_AS(classify(s.approx, s.model, 2), Error);
}

TEST_CASE("clock spacing")
{
    const Setup s(families::single_geometric());
    const ClockStats small = clock_report(s.at(5));
    CHECK(small.n == 5);
    std::vector<ClockStats> sweep;
    for (int n : {50, 100, 200}) {
        sweep.push_back(clock_report(s.at(n)));
    }
    CHECK(sweep[2].max_relative <= 0.25);
    CHECK(sweep[0].max_absolute > sweep[2].max_absolute);
    const double e = spacing_exponent(sweep);
    CHECK(e > 1.5);
    CHECK(e < 2.5);
}

TEST_CASE("band clears at conj(b_l)")
{
    const Setup pure(CoefficientFamily(Pure{0.5, 0.5}));
    const auto g = gap_check(pure.at(22), pure.model);
    REQUIRE(g.size() == 1);
    CHECK(std::abs(g[0].node - 0.5) < 1e-15);
    CHECK(g[0].flagged);
    CHECK(g[0].verdict);

    const Setup cos(families::cosine_modulated());
    const auto gc = gap_check(cos.at(22), cos.model);
    REQUIRE(gc.size() == 3);
    std::vector<double> args;
    for (const auto& rec : gc) {
        CHECK(rec.flagged);
        args.push_back(rec.node_arg);
    }
    std::sort(args.begin(), args.end());
    CHECK(args[0] == doctest::Approx(0.0));
    CHECK(args[1] == doctest::Approx(pi / 2));
    CHECK(args[2] == doctest::Approx(3 * pi / 2));
}

TEST_CASE("empty band is reported")
{
    const Setup s(families::single_geometric());
    ZeroReport r = s.at(10);
    r.band.clear();
    r.augmented_args.clear();
    r.synthetic.clear();
    r.spacing.clear();
    CHECK_THROWS_AS(gap_check(r, s.model), Error);
    CHECK_THROWS_AS(clock_report(r), Error);
}

TEST_CASE("interior zeros match the limit polynomial")
{
    const Setup s(families::cosine_modulated());
    const ZeroReport r = s.at(22);
    const InteriorMatch m = match_interior(r, predicted(s.model, 22, s.model.b - r.delta));
    REQUIRE(m.pairs.size() == 1);
    CHECK(m.pairs[0].distance < 3e-9);
    CHECK(m.complete(r.delta));
    CHECK_NOTHROW(require_matched(m, r.delta));

    double prev = 1.0;
    for (int n = 14; n <= 62; n += 8) {
        const ZeroReport rn = s.at(n);
        const InteriorMatch mn = match_interior(rn, predicted(s.model, n, s.model.b - rn.delta));
        REQUIRE(mn.pairs.size() == 1);
        CHECK(mn.pairs[0].distance <= std::max(prev, 1e-15));
        prev = mn.pairs[0].distance;
    }

    const Setup pure(CoefficientFamily(Pure{0.5, 0.5}));
    const ZeroReport rp = pure.at(22);
    const InteriorMatch mp = match_interior(rp, predicted(pure.model, 22, 0.4));
    CHECK(mp.pairs.empty());
    CHECK(mp.unmatched_zeros.empty());

    const InteriorMatch bad = match_interior(r, {});
    CHECK_FALSE(bad.complete(r.delta));
    try {
        require_matched(bad, r.delta);
        FAIL("expected UnmatchedZero");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnmatchedZero);
    }
}

TEST_CASE("NT zeros approach the outer-limit zeros")
{
    const Setup s(families::cosine_modulated());
    for (int n : {40, 80}) {
        const ZeroReport r = s.at(n);
        REQUIRE(r.nt.size() == 3);
        for (double d : r.nt_match_distance) {
            CHECK(d >= 0.0);
            CHECK(d < 1e-6);
        }
    }
}
