#include "opuc/szego.hpp"

#include "opuc/asymptotics.hpp"
#include "opuc/errors.hpp"
#include "opuc/fit.hpp"
#include "opuc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <variant>

namespace opuc {

namespace {

// Number of leading coefficients after which the sequence is identically zero,
// or -1 when it does not terminate.
long long exact_length(const CoefficientFamily& family)
{
    if (const auto* t = std::get_if<Table>(&family.rule())) {
        return static_cast<long long>(t->values.size());
    }
    if (const auto* e = std::get_if<ExpSum>(&family.rule())) {
        if (e->model.size() == 0) {
            return e->remainder ? static_cast<long long>(e->remainder->xi.size()) : 0;
        }
    }
    return -1;
}

} // namespace

SzegoApprox::SzegoApprox(CoefficientFamily family, SzegoOptions opts)
    : family_(std::move(family)), opts_(opts), q_(family_.decay_rate()),
      exact_terms_(exact_length(family_))
{
    // log D(0) = (1/2) sum log(1 - |alpha_j|^2)
    double acc = 0.0;
    int small = 0;
    for (long long j = 0; j < opts_.max_terms; ++j) {
        if (exact_terms_ >= 0 && j >= exact_terms_) {
            break;
        }
        const double a = std::abs(family_.alpha(j));
        acc += std::log1p(-a * a);
        small = a * a < 1e-20 ? small + 1 : 0;
        if (exact_terms_ < 0 && small >= 3 && j >= 16) {
            break;
        }
    }
    d0_ = std::exp(0.5 * acc);
}

long long SzegoApprox::min_terms(double rate) const
{
    if (!(rate > 0.0) || rate >= 1.0) {
        return 0;
    }
    return static_cast<long long>(std::ceil(2.0 * std::log(opts_.tol) / std::log(rate)));
}

LimitValue SzegoApprox::szego_inverse_detail(Complex z) const
{
    const double r = std::abs(z);
    if (q_ > 0.0 && r * q_ >= 1.0 - opts_.margin) {
        raise(ErrorCode::OutsideDomain, "szego_inverse needs |z| < 1/q");
    }
    const long long n_min = min_terms(q_ * std::max(r, q_));
    const bool scaled = r > 1.0;
    AlphaStream stream(family_, scaled ? z : Complex(1.0));
    AlphaStream conj_stream(family_, scaled ? 1.0 / std::conj(z) : Complex(1.0));
    const Complex inv_z = scaled ? 1.0 / z : Complex{};

    Complex phi = 1.0; // Phi_k, or U_k = z^{-k} Phi_k when scaled
    Complex star = 1.0;
    int quiet = 0;
    for (long long k = 0; k < opts_.max_terms; ++k) {
        if (exact_terms_ >= 0 && k >= exact_terms_) {
            return {star, k};
        }
        const Complex a = stream.next();
        Complex next_phi;
        if (scaled) {
            next_phi = phi - std::conj(conj_stream.next()) * inv_z * star;
        } else {
            next_phi = z * phi - std::conj(a) * star;
        }
        const Complex next_star = star - a * z * phi;
        const double diff = std::abs(next_star - star);
        phi = next_phi;
        star = next_star;
        quiet = diff < opts_.tol * std::max(1.0, std::abs(star)) ? quiet + 1 : 0;
        if (quiet >= 3 && k + 1 >= n_min) {
            return {star, k + 1};
        }
    }
    raise(ErrorCode::NoConvergence, "szego_inverse did not stabilize");
}

LimitValue SzegoApprox::outer_limit_detail(Complex z) const
{
    const double r = std::abs(z);
    if (r == 0.0 || r <= q_ * (1.0 + opts_.margin)) {
        raise(ErrorCode::OutsideDomain, "outer_limit needs |z| > q");
    }
    const long long n_min = min_terms(q_ / r);
    const Complex s = 1.0 / std::conj(z);
    const Complex inv_z = 1.0 / z;
    AlphaStream inner(family_, z);
    AlphaStream outer(family_, s);
    Complex u = 1.0;
    Complex star = 1.0;
    int quiet = 0;
    for (long long k = 0; k < opts_.max_terms; ++k) {
        if (exact_terms_ >= 0 && k >= exact_terms_) {
            return {u, k};
        }
        const Complex az = inner.next();
        const Complex as = outer.next();
        const Complex next_u = u - std::conj(as) * inv_z * star;
        star -= az * z * u;
        const double diff = std::abs(next_u - u);
        u = next_u;
        quiet = diff < opts_.tol * std::max(1.0, std::abs(u)) ? quiet + 1 : 0;
        if (quiet >= 3 && k + 1 >= n_min) {
            return {u, k + 1};
        }
    }
    raise(ErrorCode::NoConvergence, "outer_limit did not stabilize");
}

double AnnulusSpec::outer() const { return std::min(1.0, b / delta1); }

bool AnnulusSpec::contains(Complex z) const
{
    const double r = std::abs(z);
    return r > inner() && r < outer();
}

namespace {

int grid_terms(const SzegoApprox& approx, double r, double tol, int cap)
{
    const double q = approx.q();
    if (q <= 0.0) {
        return 1;
    }
    const double n = std::ceil(std::log(tol) / std::log(q / r));
    return static_cast<int>(std::min<double>(cap, std::max(1.0, n)));
}

double arg_positive(Complex z)
{
    double a = std::arg(z);
    if (a < 0.0) {
        a += 2.0 * std::numbers::pi;
    }
    return a + 0.0;
}

} // namespace

NtCandidates nt_zero_candidates(const SzegoApprox& approx, double inner, double outer,
                                const ScanOptions& opts)
{
    if (!(inner > approx.q() && inner < outer)) {
        raise(ErrorCode::OutsideDomain, "NT search annulus must lie in |z| > q");
    }
    NtCandidates result;
    if (approx.family().is_free()) {
        return result;
    }
    std::vector<double> radii;
    for (double r = inner + 0.5 * opts.modulus_step; r < outer; r += opts.modulus_step) {
        radii.push_back(r);
    }
    const std::size_t nr = radii.size();
    const auto na = static_cast<std::size_t>(opts.angles);
    if (nr == 0) {
        return result;
    }
    std::vector<Complex> pts;
    std::vector<int> steps;
    pts.reserve(nr * na);
    steps.reserve(nr * na);
    for (double r : radii) {
        const int n = grid_terms(approx, r, opts.grid_tol, opts.max_grid_terms);
        for (std::size_t j = 0; j < na; ++j) {
            pts.push_back(std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(j) / opts.angles));
            steps.push_back(n);
        }
    }
    std::vector<Complex> values(pts.size());
    if (opts.parallel) {
        kernels::parallel::outer_limit_scan(approx.family(), pts, steps, values);
    } else {
        kernels::serial::outer_limit_scan(approx.family(), pts, steps, values);
    }

    auto mag = [&](std::size_t i, std::size_t j) { return std::abs(values[i * na + j]); };
    std::vector<Complex> seeds;
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            const double v = mag(i, j);
            bool minimum = true;
            bool strict = false;
            for (int di = -1; di <= 1 && minimum; ++di) {
                if ((di < 0 && i == 0) || (di > 0 && i + 1 == nr)) {
                    continue;
                }
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) {
                        continue;
                    }
                    const std::size_t ii = i + static_cast<std::size_t>(static_cast<long long>(di));
                    const auto nal = static_cast<long long>(na);
                    const auto jj = static_cast<std::size_t>((static_cast<long long>(j) + dj + nal) % nal);
                    const double w = mag(ii, jj);
                    if (w < v) {
                        minimum = false;
                        break;
                    }
                    strict = strict || w > v;
                }
            }
            if (minimum && strict) {
                seeds.push_back(pts[i * na + j]);
            }
        }
    }

    const double h = opts.fd_step;
    for (Complex z : seeds) {
        bool ok = false;
        try {
            for (int it = 0; it < opts.newton_iterations; ++it) {
                const Complex f = approx.outer_limit(z);
                const Complex df = (approx.outer_limit(z + h) - approx.outer_limit(z - h)) / (2.0 * h);
                if (df == Complex{}) {
                    break;
                }
                const Complex step = f / df;
                z -= step;
                if (std::abs(step) <= 1e-13 * std::max(1.0, std::abs(z))) {
                    ok = true;
                    break;
                }
            }
        } catch (const Error&) {
            ok = false;
        }
        const double r = std::abs(z);
        if (!ok || r < inner || r > outer) {
            ++result.dropped;
            continue;
        }
        const bool seen = std::any_of(result.points.begin(), result.points.end(),
                                      [&](Complex w) { return std::abs(w - z) < 1e-8; });
        if (!seen) {
            result.points.push_back(z);
        }
    }
    std::sort(result.points.begin(), result.points.end(), [](Complex a, Complex b) {
        const double aa = arg_positive(a);
        const double ab = arg_positive(b);
        if (aa != ab) {
            return aa < ab;
        }
        return std::abs(a) < std::abs(b);
    });
    return result;
}

Delta1Fit estimate_delta1(const SzegoApprox& approx, const DecayModel& model,
                          const Delta1Options& opts)
{
    if (opts.n_first < 0 || opts.n_last <= opts.n_first + 1) {
        raise(ErrorCode::InvalidArgument, "estimate_delta1: bad index range");
    }
    Delta1Fit fit;
    fit.b = model.b;
    std::vector<double> sups(static_cast<std::size_t>(opts.n_last - opts.n_first + 1), 0.0);
    for (int k = 0; k < opts.angles; ++k) {
        const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * (k + 0.5) / opts.angles);
        const PointTrajectory traj(approx, model, z, opts.n_last);
        for (int n = opts.n_first; n <= opts.n_last; ++n) {
            auto& s = sups[static_cast<std::size_t>(n - opts.n_first)];
            s = std::max(s, std::abs(traj.r(n)));
        }
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (int n = opts.n_first; n <= opts.n_last; ++n) {
        const double s = sups[static_cast<std::size_t>(n - opts.n_first)];
        fit.ns.push_back(n);
        fit.sups.push_back(s);
        if (s > 1e-300) {
            xs.push_back(n);
            ys.push_back(s);
        }
    }
    if (xs.size() < 3) {
        fit.degenerate = true;
        fit.delta1 = opts.floor;
        return fit;
    }
    const LinearFit lf = log_linear_fit(xs, ys);
    fit.r2 = lf.r2;
    fit.fitted = std::exp(lf.slope) / model.b;
    fit.constant = std::exp(lf.intercept);
    if (lf.r2 < opts.min_r2) {
        raise(ErrorCode::FitFailed, "sup |R_n| is not geometric (r2 = " + std::to_string(lf.r2) + ")");
    }
    if (!(fit.fitted < 1.0)) {
        raise(ErrorCode::FitFailed, "fitted Delta1 >= 1");
    }
    fit.delta1 = std::min(fit.fitted * opts.margin, 0.99);
    // Smallest constant that makes C (b Delta1)^n dominate every measured sup.
    fit.constant = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double bound = ipow(model.b * fit.delta1, static_cast<long long>(xs[i]));
        fit.constant = std::max(fit.constant, ys[i] / bound);
    }
    return fit;
}

void write_outer_limit_grid(std::ostream& out, const SzegoApprox& approx, double r_min,
                            double r_max, int radii, int angles)
{
    if (radii < 1 || angles < 1 || !(r_min > approx.q()) || r_max < r_min) {
        raise(ErrorCode::InvalidArgument, "outer limit grid: bad ranges");
    }
    std::vector<Complex> pts;
    std::vector<int> steps;
    for (int i = 0; i < radii; ++i) {
        const double r = radii == 1 ? r_min : r_min + (r_max - r_min) * i / (radii - 1);
        const long long n = approx.q() > 0.0 ? approx.min_terms(approx.q() / r) : 1;
        for (int j = 0; j < angles; ++j) {
            pts.push_back(std::polar(r, 2.0 * std::numbers::pi * j / angles));
            steps.push_back(static_cast<int>(std::min<long long>(n + 3, 1'000'000)));
        }
    }
    std::vector<Complex> values(pts.size());
    kernels::parallel::outer_limit_scan(approx.family(), pts, steps, values);
    out << "re_z,im_z,re_f,im_f\n";
    char buf[128];
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", pts[i].real(), pts[i].imag(),
                      values[i].real(), values[i].imag());
        out << buf;
    }
}

} // namespace opuc
