#include "opuc/asymptotics.hpp"

#include "opuc/kernels.hpp"
#include "opuc/recursion.hpp"

#include <algorithm>
#include <cmath>

namespace opuc {

namespace {

constexpr double pole_tol = 1e-14;
constexpr int max_tail_terms = 100000;

void check_poles(const DecayModel& model, Complex z)
{
    for (const Complex& node : model.nodes) {
        if (std::abs(z - std::conj(node)) <= pole_tol * std::max(1.0, std::abs(node))) {
            raise(ErrorCode::PoleHit, "z coincides with conj(b_l)");
        }
    }
}

// sum_l conj(C_l) / (conj(b_l) - z)
Complex pole_sum(const DecayModel& model, Complex z)
{
    Complex s{};
    for (std::size_t l = 0; l < model.size(); ++l) {
        s += std::conj(model.amplitudes[l]) / (std::conj(model.nodes[l]) - z);
    }
    return s;
}

// sum_l conj(C_l) conj(b_l)^n / (z - conj(b_l))
Complex bracket_sum(const DecayModel& model, long long n, Complex z)
{
    Complex s{};
    for (std::size_t l = 0; l < model.size(); ++l) {
        const Complex nb = std::conj(model.nodes[l]);
        s += std::conj(model.amplitudes[l]) * ipow(nb, n) / (z - nb);
    }
    return s;
}

int extra_terms(const SzegoApprox& approx, double r, double tail_tol)
{
    const double q = approx.q();
    if (q <= 0.0) {
        return 1;
    }
    const double rate = q * std::max(r, q);
    if (rate >= 1.0) {
        raise(ErrorCode::OutsideDomain, "trajectory needs q |z| < 1");
    }
    return static_cast<int>(std::ceil(std::log(tail_tol) / std::log(rate))) + 1;
}

} // namespace

Complex u_n(Complex node, long long n, Complex z)
{
    const Complex nb = std::conj(node);
    if (std::abs(z - nb) <= pole_tol * std::max(1.0, std::abs(nb))) {
        raise(ErrorCode::PoleHit, "u_n: z = conj(b_l)");
    }
    return ipow(nb, n) / (z - nb);
}

PointTrajectory::PointTrajectory(const SzegoApprox& approx, const DecayModel& model, Complex z,
                                 int max_index, double tail_tol)
    : z_(z), max_index_(max_index), model_(&model), family_(&approx.family())
{
    if (max_index < 0) {
        raise(ErrorCode::InvalidArgument, "trajectory index must be nonnegative");
    }
    const int k_total = max_index + extra_terms(approx, std::abs(z), tail_tol);
    const auto alphas = family_->alphas(static_cast<std::size_t>(k_total));
    const Complex pts[1] = {z};
    auto grid = kernels::serial::szego_values(alphas, pts);
    phi_ = std::move(grid.phi);
    phistar_ = std::move(grid.phistar);
    tail_.assign(phi_.size(), Complex{});
    for (int m = k_total - 1; m >= 0; --m) {
        const auto mm = static_cast<std::size_t>(m);
        tail_[mm] = tail_[mm + 1] + alphas[mm] * z * phi_[mm];
    }
    // Phi*_K, the szego_inverse approximant at N = K; T_m = Phi*_m - G exactly.
    g_ = phistar_.back();
}

Complex PointTrajectory::r(int n) const
{
    const Complex a = std::conj(family_->alpha(n));
    const Complex lead = std::conj(model_->leading_sum(n));
    return (a - lead) * phistar(n) + lead * tail(n);
}

Complex r_n(const SzegoApprox& approx, const DecayModel& model, int n, Complex z)
{
    return PointTrajectory(approx, model, z, n).r(n);
}

Complex tilde_q(const SzegoApprox& approx, const DecayModel& model, int n, Complex z)
{
    check_poles(model, z);
    Complex s{};
    for (std::size_t l = 0; l < model.size(); ++l) {
        s += std::conj(model.amplitudes[l]) * ipow(model.omega(l), n) / (z - std::conj(model.nodes[l]));
    }
    return s * approx.szego_inverse(z) / approx.d0();
}

TildeQError tilde_q_error(const SzegoApprox& approx, const DecayModel& model, int n, Complex z)
{
    check_poles(model, z);
    const PointTrajectory traj(approx, model, z, n);
    const CoefficientFamily& family = approx.family();

    const double log_kn = log_kappa(family, n);
    // sum_{j >= n} log(1 - |alpha_j|^2), to negligible size
    double rest = 0.0;
    int small = 0;
    for (long long j = n; j < approx.options().max_terms; ++j) {
        const double a = std::abs(family.alpha(j));
        rest += std::log1p(-a * a);
        small = a * a < 1e-30 ? small + 1 : 0;
        if (small >= 3 || (family.is_free() && j > n + 3)) {
            break;
        }
    }
    const double kn = std::exp(log_kn);
    const double kinf = kn * std::exp(-0.5 * rest);
    const double kdiff = -kn * std::expm1(-0.5 * rest);

    const double bn = ipow(model.b, -static_cast<long long>(n));
    const Complex phi = traj.phi(n);
    Complex rsum{};
    Complex zpow = 1.0;
    for (int j = 1; j <= n; ++j) {
        rsum += zpow * traj.r(n - j);
        zpow *= z;
    }
    const Complex g = traj.g();
    const Complex gap = ipow(z, n) * (1.0 + g * pole_sum(model, z)) - rsum;

    TildeQError out;
    out.stable = bn * (kdiff * phi + kinf * gap);
    out.direct = bn * kn * phi - tilde_q(approx, model, n, z);
    return out;
}

ComplexPoly p_infinity(const DecayModel& model, std::span<const Complex> omega_inf)
{
    if (omega_inf.size() != model.size()) {
        raise(ErrorCode::InvalidArgument, "p_infinity: one omega per term");
    }
    ComplexPoly sum;
    for (std::size_t l = 0; l < model.size(); ++l) {
        ComplexPoly term = ComplexPoly::constant(std::conj(model.amplitudes[l]) * omega_inf[l]);
        for (std::size_t k = 0; k < model.size(); ++k) {
            if (k != l) {
                term = term.times_linear(std::conj(model.nodes[k]));
            }
        }
        sum += term;
    }
    return sum;
}

ComplexPoly p_n(const DecayModel& model, long long n) { return p_infinity(model, class_omegas(model, n)); }

int rotation_period(const DecayModel& model, int max_p, double tol)
{
    for (int p = 1; p <= max_p; ++p) {
        bool all = true;
        for (std::size_t l = 0; l < model.size() && all; ++l) {
            all = std::abs(ipow(model.omega(l), p) - 1.0) < tol;
        }
        if (all) {
            return p;
        }
    }
    return 0;
}

std::vector<Complex> class_omegas(const DecayModel& model, long long r)
{
    std::vector<Complex> out;
    out.reserve(model.size());
    for (std::size_t l = 0; l < model.size(); ++l) {
        out.push_back(ipow(model.omega(l), r));
    }
    return out;
}

ComplexPoly w_ell(double b, std::span<const Complex> c, int ell)
{
    return ComplexPoly(w_ell_coeffs<Complex>(Complex(b), c, ell));
}

Complex ratio_limit_series(const RatioLimitData& data, Complex z, Complex d_inv, double tol,
                           double margin)
{
    const double r = std::abs(z);
    if (!(r < data.radius * (1.0 - margin))) {
        raise(ErrorCode::OutsideDomain, "ratio_limit_series: |z| beyond the radius of convergence");
    }
    const double rho = r / data.radius;
    int K = 0;
    if (rho > 0.0) {
        K = static_cast<int>(std::ceil(std::log(tol * (1.0 - rho)) / std::log(rho)));
    }
    Complex sum{};
    Complex zpow = 1.0;
    for (int k = 0; k <= K; ++k) {
        sum += data.beta(k) * zpow;
        zpow *= z;
    }
    return -d_inv * sum;
}

Complex alpha_ratio(const CoefficientFamily& family, int n, Complex z)
{
    if (n < 1) {
        raise(ErrorCode::InvalidArgument, "alpha_ratio needs n >= 1");
    }
    const Complex a = family.alpha(n - 1);
    if (a == Complex{}) {
        raise(ErrorCode::RatioUndefined, "alpha_{n-1} = 0");
    }
    return szego_values(family, z, n).phi.back() / std::conj(a);
}

Complex reversed_ratio(const CoefficientFamily& family, int n, Complex z)
{
    if (n < 1) {
        raise(ErrorCode::InvalidArgument, "reversed_ratio needs n >= 1");
    }
    const Complex a = family.alpha(n - 1);
    if (a == Complex{}) {
        raise(ErrorCode::RatioUndefined, "alpha_{n-1} = 0");
    }
    const PointValues v = szego_values(family, z, n);
    return v.phi.back() / (std::conj(a) * v.phistar.back());
}

TailBound tail_bound(const AnnulusSpec& annulus, int n, Complex z, double rel_tol)
{
    const double r = std::abs(z);
    const double inner = annulus.inner();
    const double rho = inner / r;
    if (!(rho < 1.0 / 1.02)) {
        raise(ErrorCode::OutsideDomain, "s_n needs |z| > b Delta1");
    }
    TailBound tb;
    if (rho > 0.0) {
        const double j = std::ceil(std::log(rel_tol * (1.0 - rho)) / std::log(rho)) - 1.0;
        if (j > max_tail_terms) {
            raise(ErrorCode::TailTooLarge, "s_n truncation exceeds the term cap");
        }
        tb.J = std::max(0, static_cast<int>(j));
    }
    tb.bound = annulus.r_constant * ipow(inner, n) / (r - inner);
    return tb;
}

SeriesValue s_n(const PointTrajectory& traj, const AnnulusSpec& annulus, int n)
{
    SeriesValue out;
    out.tail = tail_bound(annulus, n, traj.z(), 1e-12);
    if (n + out.tail.J > traj.max_index()) {
        raise(ErrorCode::InvalidArgument, "s_n: trajectory too short for the truncation");
    }
    const Complex w = 1.0 / traj.z();
    Complex wpow = w;
    for (int j = 0; j <= out.tail.J; ++j) {
        out.value += wpow * traj.r(n + j);
        wpow *= w;
    }
    return out;
}

SeriesValue s_n(const SzegoApprox& approx, const DecayModel& model, const AnnulusSpec& annulus,
                int n, Complex z)
{
    const TailBound tb = tail_bound(annulus, n, z);
    const PointTrajectory traj(approx, model, z, n + tb.J);
    return s_n(traj, annulus, n);
}

namespace {

Complex continuation_from(const PointTrajectory& traj, const DecayModel& model,
                          const AnnulusSpec& annulus)
{
    return 1.0 + traj.g() * pole_sum(model, traj.z()) - s_n(traj, annulus, 0).value;
}

} // namespace

Complex outer_continuation(const SzegoApprox& approx, const DecayModel& model,
                           const AnnulusSpec& annulus, Complex z)
{
    check_poles(model, z);
    const TailBound tb = tail_bound(annulus, 0, z);
    const PointTrajectory traj(approx, model, z, tb.J);
    return continuation_from(traj, model, annulus);
}

CriticalDecomposition critical_decomposition(const SzegoApprox& approx, const DecayModel& model,
                                             const AnnulusSpec& annulus, int n, Complex z,
                                             OuterRoute route)
{
    if (!annulus.contains(z)) {
        raise(ErrorCode::OutsideDomain, "critical_decomposition needs z in the critical annulus");
    }
    check_poles(model, z);
    if (route == OuterRoute::Auto) {
        const double margin = approx.options().margin;
        route = std::abs(z) > model.b * (1.0 + margin) ? OuterRoute::Limit : OuterRoute::Continuation;
    }
    const TailBound tb = tail_bound(annulus, n, z);
    const PointTrajectory traj(approx, model, z, n + tb.J);

    CriticalDecomposition d;
    d.n = n;
    d.z = z;
    d.route = route;
    d.phi_value = traj.phi(n);
    d.s_term = s_n(traj, annulus, n).value;
    d.interior_term = bracket_sum(model, n, z) * traj.g();
    const Complex f = route == OuterRoute::Limit ? approx.outer_limit(z)
                                                 : continuation_from(traj, model, annulus);
    d.outer_term = ipow(z, n) * f;
    d.residual = std::abs(d.phi_value - (d.s_term + d.interior_term + d.outer_term));
    return d;
}

} // namespace opuc
