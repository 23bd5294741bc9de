#pragma once

#include "opuc/coeffseq.hpp"
#include "opuc/complex_poly.hpp"

#include <vector>

namespace opuc {

struct SzegoPair {
    int n = 0;
    ComplexPoly phi;     // monic Phi_n
    ComplexPoly phistar; // Phi_n^*
};

SzegoPair initial_pair();
// Phi_{n+1} = z Phi_n - conj(alpha) Phi_n^*,  Phi_{n+1}^* = Phi_n^* - alpha z Phi_n
SzegoPair szego_step(const SzegoPair& pair, Complex alpha);
// Pairs for n = 0..N.
std::vector<SzegoPair> monic_sequence(const CoefficientFamily& family, int N);
// Only the last pair; O(N) memory.
SzegoPair monic_pair(const CoefficientFamily& family, int n);

// True when phistar is the conjugate coefficient reversal of phi within tol.
bool reversal_holds(const SzegoPair& pair, double tol = 0.0);

double kappa(const CoefficientFamily& family, int n);
// log kappa_n, accumulated with log1p.
double log_kappa(const CoefficientFamily& family, int n);
ComplexPoly orthonormal(const CoefficientFamily& family, int n);

// Phi_n(z) and Phi_n^*(z) for n = 0..N by the recursion on values.
struct PointValues {
    Complex z;
    std::vector<Complex> phi;
    std::vector<Complex> phistar;
};
PointValues szego_values(const CoefficientFamily& family, Complex z, int N);

// Phi_n(z) = z^n - sum_{j=1}^n conj(alpha_{n-j}) z^{j-1} Phi_{n-j}^*(z)
Complex phi_by_direct_sum(const CoefficientFamily& family, int n, Complex z);

struct BoundOptions {
    int angles = 256;
    double slack = 1e-9;
    // Beyond the report range, the recursion runs until (q q')^N < limit_tol to
    // stand in for the limit D(0)/D(z).
    double limit_tol = 1e-17;
    bool throw_on_violation = true;
};

// One row per n: measured / predicted for each bound. Values <= 1 hold.
struct BoundRow {
    int n = 0;
    double disk_phistar = 0.0;  // |Phi_n^*| on |z| <= 1 vs C1
    double outer_phi = 0.0;     // |Phi_n| / |z|^n on |z| >= 1 vs C1
    double annulus_phistar = 0.0; // |Phi_n^*| on 1 <= |z| < 1/q vs 1 + C1 C |z| / (1 - q|z|)
    double inner_phi = 0.0;     // |Phi_n| on |z| <= 1 vs C_{q'} max(|z|, q')^n
    double limit_error = 0.0;   // |Phi_n^* - lim| on |z| <= q' vs Ctilde (q q')^n
};

struct BoundReport {
    double q = 0.0;
    double qprime = 0.0;
    double C = 0.0;        // measured sup |alpha_n| / q^n
    double C1 = 0.0;       // prod_j (1 + C q^j)
    double Cqprime = 0.0;  // 1 + C1 C / (q' - q)
    double Ctilde = 0.0;   // C C_{q'} q' / (1 - q q')
    double max_disk_phistar = 0.0;
    double max_outer_phi = 0.0;
    double max_inner_phi = 0.0;
    double worst_ratio = 0.0;
    double slack = 0.0;
    // exp of the fitted slope of log sup_{|z|=q'} |Phi_{n+1}^* - Phi_n^*|
    double fitted_rate = 0.0;
    double predicted_rate = 0.0; // q q'
    std::vector<BoundRow> rows;
    bool holds() const;
};

BoundReport check_bounds(const CoefficientFamily& family, double q, double qprime, int N,
                         const BoundOptions& opts = {});

} // namespace opuc
