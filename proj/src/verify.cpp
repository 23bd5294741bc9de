#include "opuc/verify.hpp"

#include "opuc/asymptotics.hpp"
#include "opuc/determinants.hpp"
#include "opuc/errors.hpp"
#include "opuc/fit.hpp"
#include "opuc/kernels.hpp"
#include "opuc/recursion.hpp"
#include "opuc/roots.hpp"
#include "opuc/szego.hpp"
#include "opuc/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>

namespace opuc {

namespace {

constexpr double pi = std::numbers::pi;

VerifyOutcome outcome(std::string id, Json params, Json measured, bool pass)
{
    return {std::move(id), std::move(params), std::move(measured), pass};
}

std::vector<int> range(int first, int last, int step = 1)
{
    std::vector<int> v;
    for (int n = first; n <= last; n += step) {
        v.push_back(n);
    }
    return v;
}

std::vector<int> ns_or(const VerifyConfig& cfg, std::vector<int> fallback)
{
    return cfg.ns.empty() ? fallback : cfg.ns;
}

std::vector<CoefficientFamily> families_or(const VerifyConfig& cfg,
                                           std::vector<CoefficientFamily> fallback)
{
    if (cfg.family) {
        return {*cfg.family};
    }
    return fallback;
}

Json cj(Complex z) { return complex_to_json(z); }

Json cjs(const std::vector<Complex>& v)
{
    Json a = Json::array();
    for (const Complex& z : v) {
        a.push_back(cj(z));
    }
    return a;
}

// Zeros of p with |z| < r.
std::vector<Complex> zeros_inside(const ComplexPoly& p, double r)
{
    std::vector<Complex> out;
    if (p.degree() < 1) {
        return out;
    }
    for (const Complex& z : find_roots(p).roots) {
        if (std::abs(z) < r) {
            out.push_back(z);
        }
    }
    return out;
}

const PeriodicRatio& periodic_rule(const CoefficientFamily& family)
{
    const auto* p = std::get_if<PeriodicRatio>(&family.rule());
    if (!p) {
        raise(ErrorCode::Config, "suite needs a periodic_ratio family");
    }
    return *p;
}

// ---------------------------------------------------------------- prop2.1

std::vector<VerifyOutcome> suite_prop21(const VerifyConfig& cfg)
{
    std::vector<VerifyOutcome> out;
    const int N = cfg.ns.empty() ? 200 : *std::max_element(cfg.ns.begin(), cfg.ns.end());
    for (const auto& fam : families_or(cfg, {families::single_geometric(), families::cosine_modulated()})) {
        const Json params = {{"family", fam.label()}, {"N", N}};
        const double q = fam.decay_rate();
        if (q > 0.0 && q < 1.0) {
            const double qp = std::max(0.7, 0.5 * (q + 1.0));
            BoundOptions bo;
            bo.throw_on_violation = false;
            const BoundReport br = check_bounds(fam, q, qp, std::min(N, 120), bo);
            Json p = params;
            p["qprime"] = qp;
            out.push_back(outcome("prop2.1-bounds", p, bound_report_to_json(br), br.holds()));
            out.push_back(outcome("prop2.1-rate", p,
                                  {{"fitted", br.fitted_rate}, {"predicted", br.predicted_rate}},
                                  std::abs(br.fitted_rate - br.predicted_rate) <= 0.05));
        }

        // |Phi_n| = |Phi_n^*| on the unit circle.
        std::vector<Complex> circle;
        for (int k = 0; k < 256; ++k) {
            circle.push_back(std::polar(1.0, 2.0 * pi * k / 256));
        }
        const auto alphas = fam.alphas(static_cast<std::size_t>(N));
        const auto grid = kernels::parallel::szego_values(alphas, circle);
        double worst = 0.0;
        for (std::size_t n = 0; n <= static_cast<std::size_t>(N); ++n) {
            for (std::size_t i = 0; i < circle.size(); ++i) {
                const double a = std::abs(grid.phi_at(n, i));
                const double b = std::abs(grid.phistar_at(n, i));
                worst = std::max(worst, std::abs(a - b) / std::max(a, b));
            }
        }
        out.push_back(outcome("prop2.1-reversal", params, {{"max_relative", worst}}, worst <= 1e-12));

        const auto seq = monic_sequence(fam, N);
        bool normalized = true;
        bool reversed = true;
        for (const auto& pair : seq) {
            normalized = normalized && pair.phi.leading() == Complex(1.0) &&
                         pair.phistar.coeff(0) == Complex(1.0) && pair.phi.degree() == pair.n;
            reversed = reversed && reversal_holds(pair);
        }
        out.push_back(outcome("prop2.1-normalization", params,
                              {{"monic_and_unit_constant", normalized}, {"reversal", reversed}},
                              normalized && reversed));

        double direct = 0.0;
        const auto pts = disk_grid(1.0, 4, 5);
        for (int n : {10, 50, std::min(N, 100)}) {
            for (const Complex& z : pts) {
                direct = std::max(direct, std::abs(phi_by_direct_sum(fam, n, z) - seq[static_cast<std::size_t>(n)].phi(z)));
            }
        }
        out.push_back(outcome("prop2.1-direct-sum", params, {{"max_abs_difference", direct}}, direct <= 1e-10));

        // u_{n+1} = z u_n - conj(b_l)^n
        if (!std::holds_alternative<Table>(fam.rule()) && !std::holds_alternative<PeriodicRatio>(fam.rule())) {
            const DecayModel model = infer_model(fam);
            std::mt19937_64 gen(cfg.seed);
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            double worst_u = 0.0;
            for (int t = 0; t < 200; ++t) {
                const Complex z(u(gen), u(gen));
                const int n = t % 40;
                for (const Complex& node : model.nodes) {
                    const Complex nb = std::conj(node);
                    const Complex lhs = u_n(node, n + 1, z);
                    const Complex un = u_n(node, n, z);
                    const Complex rhs = z * un - ipow(nb, n);
                    const double scale = std::abs(z * un) + std::abs(ipow(nb, n));
                    worst_u = std::max(worst_u, std::abs(lhs - rhs) / scale);
                }
            }
            out.push_back(outcome("prop3.1-identity", {{"family", fam.label()}, {"samples", 200}, {"seed", cfg.seed}},
                                  {{"max_relative", worst_u}}, worst_u <= 1e-13));
        }

        double sum_err = 0.0;
        double prod_err = 0.0;
        for (int n = 10; n <= std::min(N, 120); n += 10) {
            const RootSet rs = find_roots(seq[static_cast<std::size_t>(n)].phi);
            sum_err = std::max(sum_err, rs.sum_error);
            prod_err = std::max(prod_err, rs.product_error);
        }
        out.push_back(outcome("roots-vieta", params, {{"max_sum_error", sum_err}, {"max_product_error", prod_err}},
                              sum_err <= RootOptions{}.vieta_tol && prod_err <= RootOptions{}.vieta_tol));
    }
    return out;
}

// ---------------------------------------------------------------- thm2.2

std::vector<VerifyOutcome> suite_thm22(const VerifyConfig& cfg)
{
    std::vector<VerifyOutcome> out;
    const auto ns = ns_or(cfg, range(20, 120));
    for (const auto& fam : families_or(cfg, {families::cosine_modulated()})) {
        const SzegoApprox approx(fam);
        const DecayModel model = infer_model(fam);
        const double r = 0.3;
        const auto pts = disk_grid(r, 10, 10);
        std::vector<double> sup(ns.size(), 0.0);
        std::vector<double> cross(ns.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
        for (std::size_t k = 0; k < ns.size(); ++k) {
            for (const Complex& z : pts) {
                const TildeQError e = tilde_q_error(approx, model, ns[k], z);
                sup[k] = std::max(sup[k], std::abs(e.stable));
                if (ns[k] <= 30) {
                    cross[k] = std::max(cross[k], std::abs(e.direct - e.stable));
                }
            }
        }
        bool monotone = true;
        for (std::size_t k = 1; k < ns.size(); ++k) {
            monotone = monotone && sup[k] < sup[k - 1];
        }
        std::vector<double> xs(ns.begin(), ns.end());
        const LinearFit lf = log_linear_fit(xs, sup);
        const double eps = model.b - r;
        const double bound = std::log(std::max(model.delta, 1.0 - eps / model.b)) + 0.1;
        const Json params = {{"family", fam.label()}, {"radius", r}, {"points", pts.size()},
                             {"n_first", ns.front()}, {"n_last", ns.back()}};
        out.push_back(outcome("thm2.2-monotone", params, {{"sup", sup}}, monotone));
        out.push_back(outcome("thm2.2-rate", params,
                              {{"fitted_log_rate", lf.slope}, {"bound", bound}, {"r2", lf.r2}},
                              lf.slope <= bound));
        const double worst_cross = *std::max_element(cross.begin(), cross.end());
        out.push_back(outcome("thm2.2-cross-check", params, {{"max_direct_minus_stable", worst_cross}},
                              worst_cross <= 1e-12));
    }
    return out;
}

// ---------------------------------------------------------------- cor2.4

std::vector<VerifyOutcome> suite_cor24(const VerifyConfig& cfg)
{
    std::vector<VerifyOutcome> out;
    const auto ns = ns_or(cfg, {50, 100, 200});
    for (const auto& fam : families_or(cfg, {families::single_geometric()})) {
        const SzegoApprox approx(fam);
        const double b = fam.decay_rate();
        for (const Complex z : {Complex(0.2, 0.0), Complex(0.0, 0.2), Complex(-0.3, 0.1)}) {
            const Complex limit = ratio_limit_series(geometric_ratio_limit(b), z, approx.szego_inverse(z));
            std::vector<double> rel;
            for (int n : ns) {
                rel.push_back(std::abs(alpha_ratio(fam, n, z) / limit - 1.0));
            }
            out.push_back(outcome("cor2.4-ratio", {{"family", fam.label()}, {"z", cj(z)}, {"n", ns}},
                                  {{"limit", cj(limit)}, {"relative_error", rel}}, rel.back() <= 0.01));
        }
    }
    return out;
}

// ---------------------------------------------------------------- cor2.5

std::vector<VerifyOutcome> suite_cor25(const VerifyConfig& cfg)
{
    std::vector<VerifyOutcome> out;
    const auto fam = cfg.family ? *cfg.family : families::cosine_modulated_ratios();
    const PeriodicRatio& rule = periodic_rule(fam);
    const SzegoApprox approx(fam);
    const int p = static_cast<int>(rule.c.size());
    const int base = cfg.ns.empty() ? 200 : cfg.ns.back();
    const Complex z = 0.2;
    std::vector<Complex> cbar;
    for (const Complex& c : rule.c) {
        cbar.push_back(std::conj(c));
    }
    for (int ell = 0; ell < p; ++ell) {
        const int n = (base / p) * p + ell;
        const RatioLimitData data = periodic_ratio_limit(rule.b, rule.c, ell);
        const Complex limit = ratio_limit_series(data, z, approx.szego_inverse(z));
        const double rel = std::abs(alpha_ratio(fam, n, z) / limit - 1.0);
        const Json params = {{"family", fam.label()}, {"ell", ell}, {"n", n}, {"z", cj(z)}};
        out.push_back(outcome("cor2.5-ratio", params, {{"limit", cj(limit)}, {"relative_error", rel}},
                              rel <= 0.01));
        // sum beta_k z^k (1 - (z/b)^p) against W_ell with conjugated ratios
        const Complex series = -ratio_limit_series(data, z, 1.0);
        const Complex lhs = series * (1.0 - ipow(z / rule.b, p));
        const Complex rhs = w_ell(rule.b, cbar, ell)(z);
        const double diff = std::abs(lhs - rhs) / std::abs(rhs);
        out.push_back(outcome("cor2.5-w-ell", params, {{"relative_difference", diff}}, diff <= 1e-12));
    }
    return out;
}

// ---------------------------------------------------------------- thm2.6

std::vector<VerifyOutcome> suite_thm26(const VerifyConfig& cfg)
{
    std::vector<VerifyOutcome> out;
    const int n = cfg.ns.empty() ? 200 : cfg.ns.back();
    std::vector<Complex> alt;
    for (std::size_t k = 0; k < default_horizon; ++k) {
        alt.emplace_back((k % 2 ? -1.0 : 1.0) / (static_cast<double>(k) + 2.0), 0.0);
    }
    struct Case {
        CoefficientFamily family;
        std::vector<Complex> c;
        Complex z;
    };
    const std::vector<Case> cases = {
        {families::power_law(2.0), {1.0}, 0.2},
        {families::power_law(1.0), {1.0}, 0.3},
        {CoefficientFamily(Table{alt, 1.0}, "alternating_inverse"), {-1.0, -1.0}, 0.3},
    };
    for (const auto& cs : cases) {
        const int p = static_cast<int>(cs.c.size());
        for (int ell = 0; ell < p; ++ell) {
            const int m = (n / p) * p + ell;
            // G_ell = W_ell / (1 - z^p) at b = 1
            std::vector<Complex> cbar;
            for (const Complex& c : cs.c) {
                cbar.push_back(std::conj(c));
            }
            const Complex g = w_ell(1.0, cbar, ell)(cs.z) / (1.0 - ipow(cs.z, p));
            const Complex ratio = reversed_ratio(cs.family, m, cs.z);
            const double rel = std::abs(ratio / (-g) - 1.0);
            out.push_back(outcome("thm2.6-ratio",
                                  {{"family", cs.family.label()}, {"ell", ell}, {"n", m}, {"z", cj(cs.z)}},
                                  {{"ratio", cj(ratio)}, {"limit", cj(-g)}, {"relative_error", rel}},
                                  rel <= 0.01));
        }
    }
    return out;
}

// ---------------------------------------------------------------- thm3.3

std::vector<VerifyOutcome> suite_thm33(const VerifyConfig& cfg)
{
    std::vector<VerifyOutcome> out;
    const auto ns = ns_or(cfg, range(20, 80, 10));
    for (const auto& fam : families_or(cfg, {families::single_geometric(), families::cosine_modulated()})) {
        const SzegoApprox approx(fam);
        const DecayModel model = infer_model(fam);
        const Delta1Fit fit = estimate_delta1(approx, model);
        const AnnulusSpec ann = fit.annulus();
        const auto pts = annulus_grid(0.4, 0.7, 5, 4);
        const Json params = {{"family", fam.label()}, {"delta1", fit.delta1}, {"inner", ann.inner()},
                             {"outer", ann.outer()}, {"points", pts.size()}, {"n", ns}};
        std::vector<double> worst(ns.size(), 0.0);
        std::vector<double> worst_rel(ns.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
        for (std::size_t k = 0; k < ns.size(); ++k) {
            for (const Complex& z : pts) {
                const auto d = critical_decomposition(approx, model, ann, ns[k], z);
                const double scale = std::max({std::abs(d.s_term), std::abs(d.interior_term),
                                               std::abs(d.outer_term), std::abs(d.phi_value)});
                worst[k] = std::max(worst[k], d.residual);
                worst_rel[k] = std::max(worst_rel[k], d.residual / scale);
            }
        }
        std::vector<double> xs(ns.begin(), ns.end());
        std::vector<double> ys;
        for (double w : worst) {
            ys.push_back(std::max(w, 1e-300));
        }
        const double ratio = std::exp(log_linear_fit(xs, ys).slope);
        out.push_back(outcome("thm3.3-residual", params,
                              {{"max_residual", worst}, {"max_relative_residual", worst_rel},
                               {"fitted_ratio", ratio}},
                              ratio <= 0.95 && worst.back() < 1e-6));

        // continuation against the limit where both apply
        double route = 0.0;
        for (const Complex& z : pts) {
            if (std::abs(z) > model.b * 1.05) {
                const Complex lim = approx.outer_limit(z);
                const Complex cont = outer_continuation(approx, model, ann, z);
                route = std::max(route, std::abs(lim - cont) / std::max(1.0, std::abs(lim)));
            }
        }
        out.push_back(outcome("thm3.3-routes", params, {{"max_relative_difference", route}}, route <= 1e-10));

        // pole cancellation at each conj(b_l)
        Json poles = Json::array();
        bool ok = true;
        const int n = 30;
        for (std::size_t l = 0; l < model.size(); ++l) {
            const Complex node = std::conj(model.nodes[l]);
            for (double sgn : {1.0, -1.0}) {
                const auto near = critical_decomposition(approx, model, ann, n, node * (1.0 + sgn * 1e-4));
                const auto far = critical_decomposition(approx, model, ann, n, node * (1.0 + sgn * 1e-3));
                const double sn = std::abs(near.interior_term + near.outer_term);
                const double sf = std::abs(far.interior_term + far.outer_term);
                const double gi = std::abs(near.interior_term) / std::abs(far.interior_term);
                const double go = std::abs(near.outer_term) / std::abs(far.outer_term);
                const double dominance = std::min(std::abs(near.interior_term), std::abs(near.outer_term)) / sn;
                const bool pass = gi >= 5.0 && go >= 5.0 && sn / sf >= 0.5 && sn / sf <= 2.0 && dominance >= 100.0;
                ok = ok && pass;
                poles.push_back({{"node", cj(node)}, {"side", sgn}, {"interior_growth", gi},
                                 {"outer_growth", go}, {"sum_ratio", sn / sf}, {"dominance", dominance},
                                 {"pass", pass}});
            }
        }
        out.push_back(outcome("thm3.3-poles", params, {{"checks", poles}}, ok));
    }
    return out;
}

// ---------------------------------------------------------------- thm4.1-4.4

std::vector<VerifyOutcome> suite_thm4(const VerifyConfig& cfg)
{
    std::vector<VerifyOutcome> out;
    const auto fam = cfg.family ? *cfg.family : families::cosine_modulated();
    const SzegoApprox approx(fam);
    const DecayModel model = infer_model(fam);
    const auto ns = ns_or(cfg, range(20, 120));
    ClassifyOptions co;
    co.nt_candidates = nt_zero_candidates(approx, model.b * 1.02, 0.995).points;

    std::vector<ZeroReport> reports(ns.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < ns.size(); ++k) {
        reports[k] = classify(approx, model, ns[k], co);
    }
    // interior count
    std::vector<int> counts;
    bool bounded = true;
    for (const auto& r : reports) {
        counts.push_back(static_cast<int>(r.interior.size()));
        bounded = bounded && r.interior.size() + 1 <= model.size();
    }
    const Json params = {{"family", fam.label()}, {"n_first", ns.front()}, {"n_last", ns.back()}};
    out.push_back(outcome("thm4.1-interior-count", params, {{"interior_counts", counts}, {"bound", model.size() - 1}}, bounded));

    // interior zeros against P_infinity per residue class
    const int p = rotation_period(model);
    if (p > 0) {
        const double delta = 0.2 * model.b;
        std::map<int, std::vector<Complex>> predicted;
        for (int r = 0; r < p; ++r) {
            predicted[r] = zeros_inside(p_infinity(model, class_omegas(model, r)), model.b - delta);
        }
        Json dist = Json::array();
        int onset = -1;
        bool tail_ok = true;
        for (std::size_t k = 0; k < ns.size(); ++k) {
            const auto m = match_interior(reports[k], predicted[ns[k] % p]);
            const bool ok = m.complete(delta);
            double worst = 0.0;
            for (const auto& pr : m.pairs) {
                worst = std::max(worst, pr.distance);
            }
            dist.push_back({{"n", ns[k]}, {"matched", ok}, {"max_distance", worst}});
            if (ok && onset < 0) {
                onset = ns[k];
            }
            if (!ok) {
                onset = -1;
            }
        }
        tail_ok = onset >= 0;
        Json pred = Json::object();
        for (const auto& [r, v] : predicted) {
            pred[std::to_string(r)] = cjs(v);
        }
        out.push_back(outcome("thm4.2-match", params,
                              {{"period", p}, {"predicted", pred}, {"pairs", dist}, {"empirical_onset", onset}},
                              tail_ok));
    }

    // no interior zeros for a single geometric term, and for the b = 1 regime
    struct Case {
        CoefficientFamily family;
        double b;
    };
    const std::vector<Case> cases = {{families::single_geometric(), 0.5}, {families::power_law(2.0), 1.0}};
    for (const auto& cs : cases) {
        const auto sweep = range(60, 120);
        std::vector<double> min_mod(sweep.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
        for (std::size_t k = 0; k < sweep.size(); ++k) {
            const auto rs = find_roots(monic_pair(cs.family, sweep[k]).phi);
            double mm = 1.0;
            for (const Complex& z : rs.roots) {
                mm = std::min(mm, std::abs(z));
            }
            min_mod[k] = mm;
        }
        const double radius = cs.b - 0.05;
        const double worst = *std::min_element(min_mod.begin(), min_mod.end());
        out.push_back(outcome("thm4.3-no-interior",
                              {{"family", cs.family.label()}, {"radius", radius}, {"n_first", 60}, {"n_last", 120}},
                              {{"min_modulus", min_mod}, {"overall_min", worst}}, worst >= radius));
    }

    // W_ell interior zeros against interior zeros along n = m p + ell
    const auto pfam = families::cosine_modulated_ratios();
    const PeriodicRatio& rule = periodic_rule(pfam);
    const SzegoApprox papprox(pfam);
    const int pp = static_cast<int>(rule.c.size());
    for (int ell = 0; ell < pp; ++ell) {
        // zeros of W_ell on |z| = b belong to the band
        const double radius = 0.8 * rule.b;
        const auto predicted = zeros_inside(w_ell(rule.b, rule.c, ell), radius);
        const int n = 100 + ell;
        const auto rs = find_roots(monic_pair(pfam, n).phi);
        std::vector<Complex> inside;
        for (const Complex& z : rs.roots) {
            if (std::abs(z) < radius) {
                inside.push_back(z);
            }
        }
        ZeroReport shim;
        shim.interior = inside;
        const auto m = match_interior(shim, predicted);
        double worst = 0.0;
        for (const auto& pr : m.pairs) {
            worst = std::max(worst, pr.distance);
        }
        out.push_back(outcome("thm4.4-w-ell", {{"family", pfam.label()}, {"ell", ell}, {"n", n}},
                              {{"predicted", cjs(predicted)}, {"interior", cjs(inside)}, {"max_distance", worst}},
                              m.complete(1e-6)));
    }
    return out;
}

// ---------------------------------------------------------------- ex4.5

std::vector<VerifyOutcome> suite_ex45(const VerifyConfig&)
{
    std::vector<VerifyOutcome> out;
    const auto fam = families::cosine_modulated();
    const SzegoApprox approx(fam);
    const DecayModel model = infer_model(fam);
    const ZeroReport rep = classify(approx, model, 22);
    const double printed = 0.20710678374;
    const double limit = (std::numbers::sqrt2 - 1.0) / 2.0;
    double z = -1.0;
    if (rep.interior.size() == 1) {
        z = rep.interior[0].real();
    }
    const Json params = {{"family", fam.label()}, {"n", 22}};
    out.push_back(outcome("ex4.5-interior", params,
                          {{"interior", cjs(rep.interior)}, {"printed", printed},
                           {"distance_to_printed", std::abs(z - printed)},
                           {"distance_to_limit", std::abs(z - limit)}},
                          rep.interior.size() == 1 && std::abs(rep.interior[0] - printed) <= 1e-9 &&
                              std::abs(rep.interior[0] - limit) <= 3e-9));

    const std::vector<Complex> c = {-1.0, -1.0, 3.0, 1.0 / 3.0};
    const ComplexPoly w = w_ell(0.5, c, 2);
    const std::vector<Complex> expected = {1.0, -2.0, -12.0, -8.0};
    const bool coeffs = w.coeffs() == expected;
    const auto rs = find_roots(w);
    const std::vector<double> exact = {-0.5, (-1.0 - std::numbers::sqrt2) / 2.0, limit};
    double worst = 0.0;
    for (double e : exact) {
        double best = 1e300;
        for (const Complex& r : rs.roots) {
            best = std::min(best, std::abs(r - e));
        }
        worst = std::max(worst, best);
    }
    const auto inside = zeros_inside(w, 0.5 - 1e-12);
    out.push_back(outcome("ex4.5-w2", {{"b", 0.5}, {"c", cjs(c)}, {"ell", 2}},
                          {{"coeffs", poly_to_json(3, w)["coeffs"]}, {"root_error", worst},
                           {"inside", cjs(inside)}},
                          coeffs && worst <= 1e-12 && inside.size() == 1));
    return out;
}

// ---------------------------------------------------------------- thm5.1

std::vector<VerifyOutcome> suite_thm51(const VerifyConfig& cfg)
{
    std::vector<VerifyOutcome> out;
    const auto fam = cfg.family ? *cfg.family : families::single_geometric();
    const SzegoApprox approx(fam);
    const DecayModel model = infer_model(fam);
    const auto ns = ns_or(cfg, {50, 100, 200});
    ClassifyOptions co;
    co.nt_candidates = nt_zero_candidates(approx, model.b * 1.02, 0.995).points;
    std::vector<ZeroReport> reports(ns.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < ns.size(); ++k) {
        reports[k] = classify(approx, model, ns[k], co);
    }
    std::vector<ClockStats> stats;
    bool band_ok = true;
    bool spacing_ok = true;
    bool gap_ok = true;
    Json per_n = Json::array();
    for (const auto& r : reports) {
        const double halfwidth = 4.0 * std::log(r.n) / r.n * model.b;
        const ClockStats st = clock_report(r);
        stats.push_back(st);
        const bool b_ok = r.max_band_offset <= halfwidth && r.interior.empty() &&
                          r.band.size() + r.nt.size() == static_cast<std::size_t>(r.n);
        bool g_ok = true;
        int flagged = 0;
        for (const auto& g : r.gaps) {
            g_ok = g_ok && g.verdict;
            flagged += g.flagged ? 1 : 0;
        }
        // only the synthetic points may sit in doubled gaps
        int wide = 0;
        for (double s : r.spacing) {
            wide += s > 1.5 * 2.0 * pi / r.n ? 1 : 0;
        }
        g_ok = g_ok && flagged == static_cast<int>(model.size()) && wide == 0;
        band_ok = band_ok && b_ok;
        spacing_ok = spacing_ok && st.max_relative <= 0.25;
        gap_ok = gap_ok && g_ok;
        Json gaps = Json::array();
        for (const auto& g : r.gaps) {
            gaps.push_back({{"node_arg", g.node_arg}, {"flank_ratio", g.flank_ratio},
                            {"offset_before", g.offset_before}, {"offset_after", g.offset_after},
                            {"flagged", g.flagged}, {"verdict", g.verdict}});
        }
        per_n.push_back({{"n", r.n}, {"max_band_offset", r.max_band_offset}, {"halfwidth", halfwidth},
                         {"nt", r.nt.size()}, {"clock", clock_to_json(st)}, {"gaps", gaps}});
    }
    const double exponent = spacing_exponent(stats);
    const Json params = {{"family", fam.label()}, {"n", ns}};
    out.push_back(outcome("thm5.1-band", params, {{"per_n", per_n}}, band_ok));
    out.push_back(outcome("thm5.1-spacing", params, {{"per_n", per_n}}, spacing_ok));
    out.push_back(outcome("thm5.1-gap", params, {{"per_n", per_n}}, gap_ok));
    out.push_back(outcome("thm5.1-exponent", params, {{"exponent", exponent}},
                          exponent >= 1.5 && exponent <= 2.5));

    if (!cfg.family) {
        const auto f2 = families::cosine_modulated();
        const SzegoApprox a2(f2);
        const DecayModel m2 = infer_model(f2);
        const ZeroReport r = classify(a2, m2, 22);
        bool flags = r.gaps.size() == m2.size();
        for (const auto& g : r.gaps) {
            flags = flags && g.flagged;
        }
        std::vector<double> node_args;
        for (const auto& g : r.gaps) {
            node_args.push_back(g.node_arg);
        }
        out.push_back(outcome("thm5.1-fig2", {{"family", f2.label()}, {"n", 22}},
                              {{"interior", r.interior.size()}, {"nt", r.nt.size()},
                               {"band", r.band.size()}, {"gap_args", node_args}, {"all_flagged", flags}},
                              r.interior.size() == 1 && r.nt.size() == 3 && flags));
    }
    return out;
}

// ---------------------------------------------------------------- sec6

std::vector<VerifyOutcome> suite_sec6(const VerifyConfig& cfg)
{
    std::vector<VerifyOutcome> out;
    std::mt19937_64 gen(cfg.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto draw = [&] { return Complex(u(gen), u(gen)); };
    double worst = 0.0;
    double worst_bls = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
        for (int m = 0; m <= cfg.m; ++m) {
            DeterminantSpec spec;
            for (int j = 0; j < m; ++j) {
                spec.x.push_back(draw());
            }
            spec.z = draw();
            const Complex d = delta_direct(spec);
            const Complex r = delta_recursive(spec);
            const Complex e = delta_expanded(spec);
            const Complex o = m == 0 ? Complex(1.0) : lu_determinant(delta_matrix(spec));
            const double scale = std::max({std::abs(d), std::abs(o), 1e-300});
            worst = std::max({worst, std::abs(d - r) / scale, std::abs(d - e) / scale, std::abs(d - o) / scale});
            if (m > 0) {
                const ComplexPoly bls = bls_polynomial(spec.x);
                Complex prod = 1.0;
                for (const Complex& x : spec.x) {
                    prod *= x;
                }
                const Complex lhs = bls(spec.z) * prod;
                worst_bls = std::max(worst_bls, std::abs(lhs - e) / std::max(std::abs(e), 1e-300));
            }
        }
    }
    const Json params = {{"m", cfg.m}, {"trials", cfg.trials}, {"seed", cfg.seed}};
    out.push_back(outcome("sec6-identities", params, {{"max_relative", worst}}, worst <= 1e-10));
    out.push_back(outcome("sec6-bls-scaling", params, {{"max_relative", worst_bls}}, worst_bls <= 1e-10));

    const std::vector<Complex> c = {-1.0, -1.0, 3.0, 1.0 / 3.0};
    bool exact = true;
    for (int ell = 0; ell < 4; ++ell) {
        const auto x = bls_nodes<Complex>(Complex(0.5), c, ell);
        exact = exact && bls_polynomial(x) == w_ell(0.5, c, ell);
    }
    out.push_back(outcome("sec6-bls-w-ell", {{"b", 0.5}, {"c", cjs(c)}}, {{"exact", exact}}, exact));
    return out;
}

using Suite = std::function<std::vector<VerifyOutcome>(const VerifyConfig&)>;

const std::map<std::string, Suite>& suites()
{
    static const std::map<std::string, Suite> table = {
        {"prop2.1", suite_prop21}, {"thm2.2", suite_thm22}, {"cor2.4", suite_cor24},
        {"cor2.5", suite_cor25},   {"thm2.6", suite_thm26}, {"thm3.3", suite_thm33},
        {"thm4.1-4.4", suite_thm4}, {"ex4.5", suite_ex45},  {"thm5.1", suite_thm51},
        {"sec6", suite_sec6},
    };
    return table;
}

} // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = {"prop2.1", "thm2.2", "cor2.4", "cor2.5", "thm2.6",
                                                   "thm3.3", "thm4.1-4.4", "ex4.5", "thm5.1", "sec6"};
    return names;
}

std::vector<VerifyOutcome> run_suite(const std::string& name, const VerifyConfig& config)
{
    const auto it = suites().find(name);
    if (it == suites().end()) {
        raise(ErrorCode::Config, "unknown suite \"" + name + "\"");
    }
    return it->second(config);
}

Json outcomes_to_json(const std::string& suite, const std::vector<VerifyOutcome>& outcomes)
{
    Json arr = Json::array();
    bool all = true;
    for (const auto& o : outcomes) {
        arr.push_back({{"id", o.id}, {"parameters", o.parameters}, {"measured", o.measured}, {"pass", o.pass}});
        all = all && o.pass;
    }
    return {{"suite", suite}, {"pass", all}, {"outcomes", arr}};
}

Complex lu_determinant(std::vector<std::vector<Complex>> a)
{
    const std::size_t n = a.size();
    Complex det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a[i][k]) > std::abs(a[piv][k])) {
                piv = i;
            }
        }
        if (a[piv][k] == Complex{}) {
            return 0.0;
        }
        if (piv != k) {
            std::swap(a[piv], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) {
                a[i][j] -= f * a[k][j];
            }
        }
    }
    return det;
}

std::vector<Complex> disk_grid(double r_max, int rings, int per_ring)
{
    std::vector<Complex> pts;
    for (int i = 1; i <= rings; ++i) {
        const double r = r_max * i / rings;
        for (int k = 0; k < per_ring; ++k) {
            pts.push_back(std::polar(r, 2.0 * pi * (k + 0.5) / per_ring));
        }
    }
    return pts;
}

std::vector<Complex> annulus_grid(double r_min, double r_max, int rings, int per_ring)
{
    std::vector<Complex> pts;
    for (int i = 0; i < rings; ++i) {
        const double r = rings == 1 ? r_min : r_min + (r_max - r_min) * i / (rings - 1);
        for (int k = 0; k < per_ring; ++k) {
            pts.push_back(std::polar(r, pi / 8.0 + 2.0 * pi * k / per_ring));
        }
    }
    return pts;
}

} // namespace opuc
