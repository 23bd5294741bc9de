#include "opuc/kernels.hpp"

#include <cassert>

namespace opuc::kernels {

namespace detail {

Complex aberth_correction(const ComplexPoly& p, std::span<const Complex> roots, std::size_t k)
{
    const Complex zk = roots[k];
    Complex dp;
    const Complex value = p.eval_with_derivative(zk, dp);
    if (value == Complex{}) {
        return {};
    }
    const Complex newton = value / dp;
    Complex repulsion{};
    for (std::size_t j = 0; j < roots.size(); ++j) {
        if (j != k) {
            repulsion += 1.0 / (zk - roots[j]);
        }
    }
    return newton / (1.0 - newton * repulsion);
}

Complex outer_limit_point(const CoefficientFamily& family, Complex z, int steps)
{
    // U_k = z^{-k} Phi_k(z):
    //   U_{k+1}   = U_k - conj(alpha_k s^k) conj(s) Phi*_k,   s = 1/conj(z)
    //   Phi*_{k+1} = Phi*_k - (alpha_k z^k) z U_k
    const Complex s = 1.0 / std::conj(z);
    const Complex inv_z = 1.0 / z;
    AlphaStream inner(family, z);
    AlphaStream outer(family, s);
    Complex u = 1.0;
    Complex star = 1.0;
    for (int k = 0; k < steps; ++k) {
        const Complex az = inner.next();
        const Complex as = outer.next();
        const Complex u_next = u - std::conj(as) * inv_z * star;
        star -= az * z * u;
        u = u_next;
    }
    return u;
}

void szego_values_point(std::span<const Complex> alphas, Complex z, std::size_t i, GridValues& out)
{
    Complex phi = 1.0;
    Complex star = 1.0;
    const std::size_t m = out.points;
    out.phi[i] = phi;
    out.phistar[i] = star;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        const Complex a = alphas[k];
        const Complex next_phi = z * phi - std::conj(a) * star;
        star -= a * z * phi;
        phi = next_phi;
        out.phi[(k + 1) * m + i] = phi;
        out.phistar[(k + 1) * m + i] = star;
    }
}

} // namespace detail

namespace {

GridValues make_grid(std::size_t steps, std::size_t points)
{
    GridValues g;
    g.points = points;
    g.steps = steps;
    g.phi.resize((steps + 1) * points);
    g.phistar.resize((steps + 1) * points);
    return g;
}

} // namespace

namespace serial {

void horner(const ComplexPoly& p, std::span<const Complex> points, std::span<Complex> out)
{
    assert(points.size() == out.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        out[i] = p(points[i]);
    }
}

GridValues szego_values(std::span<const Complex> alphas, std::span<const Complex> points)
{
    GridValues g = make_grid(alphas.size(), points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        detail::szego_values_point(alphas, points[i], i, g);
    }
    return g;
}

void aberth_corrections(const ComplexPoly& p, std::span<const Complex> roots,
                        std::span<const std::uint8_t> active, std::span<Complex> out)
{
    for (std::size_t k = 0; k < roots.size(); ++k) {
        out[k] = active[k] ? detail::aberth_correction(p, roots, k) : Complex{};
    }
}

void outer_limit_scan(const CoefficientFamily& family, std::span<const Complex> points,
                      std::span<const int> steps, std::span<Complex> out)
{
    for (std::size_t i = 0; i < points.size(); ++i) {
        out[i] = detail::outer_limit_point(family, points[i], steps[i]);
    }
}

} // namespace serial

namespace parallel {

void horner(const ComplexPoly& p, std::span<const Complex> points, std::span<Complex> out)
{
    assert(points.size() == out.size());
    const long long n = static_cast<long long>(points.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = p(points[static_cast<std::size_t>(i)]);
    }
}

GridValues szego_values(std::span<const Complex> alphas, std::span<const Complex> points)
{
    GridValues g = make_grid(alphas.size(), points.size());
    const long long n = static_cast<long long>(points.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        detail::szego_values_point(alphas, points[static_cast<std::size_t>(i)],
                                   static_cast<std::size_t>(i), g);
    }
    return g;
}

void aberth_corrections(const ComplexPoly& p, std::span<const Complex> roots,
                        std::span<const std::uint8_t> active, std::span<Complex> out)
{
    const long long n = static_cast<long long>(roots.size());
#pragma omp parallel for schedule(static)
    for (long long k = 0; k < n; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        out[kk] = active[kk] ? detail::aberth_correction(p, roots, kk) : Complex{};
    }
}

void outer_limit_scan(const CoefficientFamily& family, std::span<const Complex> points,
                      std::span<const int> steps, std::span<Complex> out)
{
    const long long n = static_cast<long long>(points.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < n; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        out[ii] = detail::outer_limit_point(family, points[ii], steps[ii]);
    }
}

} // namespace parallel

} // namespace opuc::kernels
