#pragma once

// Data-parallel inner loops. Each kernel exists twice: `serial` is the
// reference implementation used by the tests, `parallel` distributes the
// same per-item computation over OpenMP threads. Per-item arithmetic is
// identical, so the two produce bitwise-equal results.

#include "opuc/coeffseq.hpp"
#include "opuc/complex_poly.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace opuc::kernels {

// Values of the monic recursion at many points, layout [n * points + i].
struct GridValues {
    std::size_t points = 0;
    std::size_t steps = 0; // highest degree stored
    std::vector<Complex> phi;
    std::vector<Complex> phistar;

    Complex phi_at(std::size_t n, std::size_t i) const { return phi[n * points + i]; }
    Complex phistar_at(std::size_t n, std::size_t i) const { return phistar[n * points + i]; }
};

namespace serial {

void horner(const ComplexPoly& p, std::span<const Complex> points, std::span<Complex> out);

// Runs Phi_{k+1} = z Phi_k - conj(a_k) Phi*_k, Phi*_{k+1} = Phi*_k - a_k z Phi_k
// for k < alphas.size() at every point.
GridValues szego_values(std::span<const Complex> alphas, std::span<const Complex> points);

// Ehrlich-Aberth corrections for every active root, computed from the same
// snapshot of `roots` (Jacobi sweep).
void aberth_corrections(const ComplexPoly& p, std::span<const Complex> roots,
                        std::span<const std::uint8_t> active, std::span<Complex> out);

// z^{-N} Phi_N(z) after steps[i] recursion steps at points[i], computed in
// scaled form so that large N does not overflow.
void outer_limit_scan(const CoefficientFamily& family, std::span<const Complex> points,
                      std::span<const int> steps, std::span<Complex> out);

} // namespace serial

namespace parallel {

void horner(const ComplexPoly& p, std::span<const Complex> points, std::span<Complex> out);
GridValues szego_values(std::span<const Complex> alphas, std::span<const Complex> points);
void aberth_corrections(const ComplexPoly& p, std::span<const Complex> roots,
                        std::span<const std::uint8_t> active, std::span<Complex> out);
void outer_limit_scan(const CoefficientFamily& family, std::span<const Complex> points,
                      std::span<const int> steps, std::span<Complex> out);

} // namespace parallel

// Per-item bodies shared by both variants.
namespace detail {

Complex aberth_correction(const ComplexPoly& p, std::span<const Complex> roots, std::size_t k);
Complex outer_limit_point(const CoefficientFamily& family, Complex z, int steps);
void szego_values_point(std::span<const Complex> alphas, Complex z, std::size_t i, GridValues& out);

} // namespace detail

} // namespace opuc::kernels
