#pragma once

#include "opuc/coeffseq.hpp"
#include "opuc/complex_poly.hpp"

#include <iosfwd>
#include <vector>

namespace opuc {

struct SzegoOptions {
    double tol = 1e-14;
    long long max_terms = 2'000'000;
    // Relative margin kept away from the boundary of each domain.
    double margin = 0.02;
};

struct LimitValue {
    Complex value;
    long long terms = 0; // N used
};

// Szego-function quantities obtained only as limits of the recursion:
//   Phi_N^*(z)      -> D(0) / D(z)                  for |z| < 1/q
//   z^{-N} Phi_N(z) -> D(0) / conj(D(1/conj z))      for |z| > q
class SzegoApprox {
public:
    explicit SzegoApprox(CoefficientFamily family, SzegoOptions opts = {});

    const CoefficientFamily& family() const { return family_; }
    const SzegoOptions& options() const { return opts_; }
    double q() const { return q_; }

    // D(0) = prod (1 - |alpha_j|^2)^{1/2}
    double d0() const { return d0_; }
    double kappa_limit() const { return 1.0 / d0_; }

    Complex szego_inverse(Complex z) const { return szego_inverse_detail(z).value; }
    LimitValue szego_inverse_detail(Complex z) const;
    Complex outer_limit(Complex z) const { return outer_limit_detail(z).value; }
    LimitValue outer_limit_detail(Complex z) const;
    // Minimum N from the geometric tail bound: 2 log(tol) / log(rate).
    long long min_terms(double rate) const;

private:
    CoefficientFamily family_;
    SzegoOptions opts_;
    double q_ = 0.0;
    double d0_ = 1.0;
    long long exact_terms_ = -1; // finite tables: recursion is exact past the end
};

struct AnnulusSpec {
    double b = 0.5;
    double delta1 = 0.5;
    // Constant C in |R_n| <= C (b Delta1)^n, from the fit when available.
    double r_constant = 1.0;

    double inner() const { return b * delta1; }
    double outer() const;
    bool contains(Complex z) const;
};

struct ScanOptions {
    double modulus_step = 0.005;
    int angles = 1024;
    double fd_step = 1e-6;
    int newton_iterations = 50;
    // Truncation target for grid evaluation; Newton uses the full tolerance.
    double grid_tol = 1e-8;
    int max_grid_terms = 2000;
    bool parallel = true;
};

struct NtCandidates {
    std::vector<Complex> points;
    int dropped = 0; // minima where Newton failed or left the annulus
};

// Zeros of the outer limit in inner < |z| < outer.
NtCandidates nt_zero_candidates(const SzegoApprox& approx, double inner, double outer,
                                const ScanOptions& opts = {});

struct Delta1Options {
    int n_first = 5;
    int n_last = 40;
    int angles = 64;
    double floor = 0.5;
    double margin = 1.05;
    double min_r2 = 0.9;
};

struct Delta1Fit {
    double delta1 = 0.5;     // with margin applied, capped below 1
    double fitted = 0.0;     // raw exp(slope) / b
    double constant = 1.0;   // exp(intercept)
    double r2 = 0.0;
    bool degenerate = false;
    std::vector<int> ns;
    std::vector<double> sups;
    double b = 0.5;
    AnnulusSpec annulus() const { return {b, delta1, constant}; }
};

Delta1Fit estimate_delta1(const SzegoApprox& approx, const DecayModel& model,
                          const Delta1Options& opts = {});

// Rows re z, im z, re f, im f of the outer limit on a polar grid.
void write_outer_limit_grid(std::ostream& out, const SzegoApprox& approx, double r_min,
                            double r_max, int radii, int angles);

} // namespace opuc
