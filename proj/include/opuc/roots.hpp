#pragma once

#include "opuc/complex_poly.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace opuc {

enum class RootMethod { Simultaneous, CompanionFallback };

struct RootOptions {
    double residual_tol = 1e-10;
    int max_iterations = 200;
    std::uint64_t seed = 0;
    // Radius of the initial circle; defaults to |a_0 / a_n|^{1/n}.
    std::optional<double> initial_radius;
    double cluster_tol = 1e-7;
    double vieta_tol = 1e-8;
    bool parallel = true;
    // Skip the simultaneous iteration (tests of the fallback path).
    bool force_companion = false;
};

struct RootSet {
    std::vector<Complex> roots;
    std::vector<double> residuals;   // |p(root)| for the unscaled p
    std::vector<int> multiplicity;   // size of the cluster each root belongs to
    int iterations = 0;
    RootMethod method = RootMethod::Simultaneous;
    double sum_error = 0.0;     // relative Vieta sum mismatch
    double product_error = 0.0; // relative Vieta product mismatch
    double max_residual_ratio = 0.0; // residual / (max|coeff| (1+|z|)^n), worst root
};

// All roots with multiplicity. Ehrlich-Aberth first, companion-matrix QR if
// that fails to converge or fails the residual or Vieta checks.
RootSet find_roots(const ComplexPoly& p, const RootOptions& opts = {});

struct PolishResult {
    Complex root;
    int iterations = 0;
    double residual = 0.0;
    bool multiple = false; // derivative vanishes at the root to working precision
};

// Newton refinement until |p(z)| <= 1e-13 sum |a_k| |z|^k.
PolishResult polish(const ComplexPoly& p, Complex z0, int max_iterations = 50);

// Eigenvalues of the balanced companion matrix by shifted QR.
std::vector<Complex> companion_roots(const ComplexPoly& p);

} // namespace opuc
