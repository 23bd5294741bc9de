#include "opuc/recursion.hpp"

#include "opuc/errors.hpp"
#include "opuc/fit.hpp"
#include "opuc/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>

namespace opuc {

SzegoPair initial_pair()
{
    return {0, ComplexPoly::constant(1.0), ComplexPoly::constant(1.0)};
}

SzegoPair szego_step(const SzegoPair& pair, Complex alpha)
{
    const ComplexPoly zphi = pair.phi.shifted(1);
    SzegoPair next{pair.n + 1, zphi - std::conj(alpha) * pair.phistar, pair.phistar - alpha * zphi};
    // conj commutes exactly with the rounded operations, so the reversal
    // identity survives bit for bit.
    assert(reversal_holds(next));
    return next;
}

bool reversal_holds(const SzegoPair& pair, double tol)
{
    if (pair.phi.degree() != pair.n || pair.phistar.degree() > pair.n) {
        return false;
    }
    for (int k = 0; k <= pair.n; ++k) {
        if (std::abs(pair.phistar.coeff(k) - std::conj(pair.phi.coeff(pair.n - k))) > tol) {
            return false;
        }
    }
    return true;
}

std::vector<SzegoPair> monic_sequence(const CoefficientFamily& family, int N)
{
    if (N < 0) {
        raise(ErrorCode::InvalidArgument, "monic_sequence: N must be nonnegative");
    }
    std::vector<SzegoPair> seq;
    seq.reserve(static_cast<std::size_t>(N) + 1);
    seq.push_back(initial_pair());
    for (int k = 0; k < N; ++k) {
        seq.push_back(szego_step(seq.back(), family.alpha(k)));
    }
    return seq;
}

SzegoPair monic_pair(const CoefficientFamily& family, int n)
{
    if (n < 0) {
        raise(ErrorCode::InvalidArgument, "monic_pair: n must be nonnegative");
    }
    SzegoPair pair = initial_pair();
    for (int k = 0; k < n; ++k) {
        pair = szego_step(pair, family.alpha(k));
    }
    return pair;
}

double log_kappa(const CoefficientFamily& family, int n)
{
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const double a = std::abs(family.alpha(j));
        acc += std::log1p(-a * a);
    }
    return -0.5 * acc;
}

double kappa(const CoefficientFamily& family, int n) { return std::exp(log_kappa(family, n)); }

ComplexPoly orthonormal(const CoefficientFamily& family, int n)
{
    return monic_pair(family, n).phi * Complex(kappa(family, n));
}

PointValues szego_values(const CoefficientFamily& family, Complex z, int N)
{
    if (N < 0) {
        raise(ErrorCode::InvalidArgument, "szego_values: N must be nonnegative");
    }
    const auto alphas = family.alphas(static_cast<std::size_t>(N));
    const Complex pts[1] = {z};
    const auto grid = kernels::serial::szego_values(alphas, pts);
    return {z, grid.phi, grid.phistar};
}

Complex phi_by_direct_sum(const CoefficientFamily& family, int n, Complex z)
{
    const PointValues v = szego_values(family, z, n);
    Complex sum{};
    Complex zpow = 1.0;
    for (int j = 1; j <= n; ++j) {
        sum += std::conj(family.alpha(n - j)) * zpow * v.phistar[static_cast<std::size_t>(n - j)];
        zpow *= z;
    }
    return ipow(z, n) - sum;
}

bool BoundReport::holds() const { return worst_ratio <= 1.0 + slack; }

namespace {

std::vector<Complex> circle(double r, int angles)
{
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(angles));
    for (int k = 0; k < angles; ++k) {
        pts.push_back(std::polar(r, 2.0 * std::numbers::pi * k / angles));
    }
    return pts;
}

std::vector<Complex> circles(std::initializer_list<double> radii, int angles)
{
    std::vector<Complex> pts;
    for (double r : radii) {
        const auto c = circle(r, angles);
        pts.insert(pts.end(), c.begin(), c.end());
    }
    return pts;
}

} // namespace

BoundReport check_bounds(const CoefficientFamily& family, double q, double qprime, int N,
                         const BoundOptions& opts)
{
    if (!(q > 0.0 && q < qprime && qprime < 1.0)) {
        raise(ErrorCode::InvalidArgument, "check_bounds: need 0 < q < q' < 1");
    }
    if (N < 1 || opts.angles < 1) {
        raise(ErrorCode::InvalidArgument, "check_bounds: N and angles must be positive");
    }
    BoundReport rep;
    rep.q = q;
    rep.qprime = qprime;
    rep.slack = opts.slack;
    rep.predicted_rate = q * qprime;

    const int n_lim = N + static_cast<int>(std::ceil(std::log(opts.limit_tol) / std::log(q * qprime)));
    for (int n = 0; n < n_lim; ++n) {
        rep.C = std::max(rep.C, std::abs(family.alpha_scaled(n, 1.0 / q)));
    }
    rep.C1 = 1.0;
    for (int j = 0;; ++j) {
        const double t = rep.C * ipow(q, j);
        rep.C1 *= 1.0 + t;
        if (t < 1e-18) {
            break;
        }
    }
    rep.Cqprime = 1.0 + rep.C1 * rep.C / (qprime - q);
    rep.Ctilde = rep.C * rep.Cqprime * qprime / (1.0 - q * qprime);

    const double r_out = std::min(1.0 / qprime, (1.0 / q) * (1.0 - 0.02));
    const auto disk = circles({0.0, qprime / 2.0, qprime, (qprime + 1.0) / 2.0, 1.0}, opts.angles);
    const auto outer = circles({1.0, (1.0 + r_out) / 2.0, r_out}, opts.angles);
    const auto alphas = family.alphas(static_cast<std::size_t>(n_lim));
    const auto gd = kernels::parallel::szego_values(alphas, disk);
    const auto go = kernels::parallel::szego_values(
        std::span<const Complex>(alphas).first(static_cast<std::size_t>(N)), outer);

    const double eps = 64.0 * std::numeric_limits<double>::epsilon();
    rep.rows.resize(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) {
        BoundRow& row = rep.rows[static_cast<std::size_t>(n)];
        row.n = n;
        const auto nn = static_cast<std::size_t>(n);
        for (std::size_t i = 0; i < disk.size(); ++i) {
            const double r = std::abs(disk[i]);
            const double star = std::abs(gd.phistar_at(nn, i));
            const double phi = std::abs(gd.phi_at(nn, i));
            rep.max_disk_phistar = std::max(rep.max_disk_phistar, star);
            row.disk_phistar = std::max(row.disk_phistar, star / rep.C1);
            const double inner_bound = rep.Cqprime * ipow(std::max(r, qprime), n);
            rep.max_inner_phi = std::max(rep.max_inner_phi, phi);
            row.inner_phi = std::max(row.inner_phi, phi / inner_bound);
            if (r <= qprime) {
                const Complex lim = gd.phistar_at(static_cast<std::size_t>(n_lim), i);
                const double err = std::abs(gd.phistar_at(nn, i) - lim);
                const double floor = eps * std::max(1.0, std::abs(lim));
                const double bound = rep.Ctilde * ipow(q * qprime, n);
                row.limit_error = std::max(row.limit_error, std::max(0.0, err - floor) / bound);
            }
        }
        for (std::size_t i = 0; i < outer.size(); ++i) {
            const double r = std::abs(outer[i]);
            const double scaled = std::exp(std::log(std::abs(go.phi_at(nn, i))) - n * std::log(r));
            rep.max_outer_phi = std::max(rep.max_outer_phi, scaled);
            row.outer_phi = std::max(row.outer_phi, scaled / rep.C1);
            const double star = std::abs(go.phistar_at(nn, i));
            row.annulus_phistar = std::max(
                row.annulus_phistar, star / (1.0 + rep.C1 * rep.C * r / (1.0 - q * r)));
        }
        rep.worst_ratio = std::max({rep.worst_ratio, row.disk_phistar, row.outer_phi,
                                    row.annulus_phistar, row.inner_phi, row.limit_error});
    }

    // Successive differences on |z| = q', restricted to where they sit well
    // above round-off.
    std::vector<double> xs;
    std::vector<double> ys;
    const std::size_t first = static_cast<std::size_t>(opts.angles) * 2; // circle r = q'
    for (int n = 1; n < N; ++n) {
        double sup = 0.0;
        for (std::size_t i = first; i < first + static_cast<std::size_t>(opts.angles); ++i) {
            sup = std::max(sup, std::abs(gd.phistar_at(static_cast<std::size_t>(n) + 1, i) -
                                         gd.phistar_at(static_cast<std::size_t>(n), i)));
        }
        if (sup > 1e-13) {
            xs.push_back(n);
            ys.push_back(sup);
        }
    }
    if (xs.size() >= 3) {
        rep.fitted_rate = std::exp(log_linear_fit(xs, ys).slope);
    }

    if (opts.throw_on_violation && !rep.holds()) {
        raise(ErrorCode::BoundViolation,
              "measured/bound ratio " + std::to_string(rep.worst_ratio) + " exceeds 1");
    }
    return rep;
}

} // namespace opuc
