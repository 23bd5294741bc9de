#pragma once

#include "opuc/coeffseq.hpp"
#include "opuc/complex_poly.hpp"
#include "opuc/errors.hpp"
#include "opuc/szego.hpp"

#include <span>
#include <vector>

namespace opuc {

// conj(node)^n / (z - conj(node)); satisfies u_{n+1} = z u_n - conj(node)^n.
Complex u_n(Complex node, long long n, Complex z);

// Recursion values at one point together with the cancellation-free tails
//   T_m = Phi_m^* - G = sum_{k >= m} alpha_k z Phi_k(z),  G = D(0)/D(z),
// and R_m = conj(alpha_m) Phi_m^* - conj(A_m) G with A_m = sum_l C_l b_l^m,
// evaluated as (conj(alpha_m) - conj(A_m)) Phi_m^* + conj(A_m) T_m.
class PointTrajectory {
public:
    PointTrajectory(const SzegoApprox& approx, const DecayModel& model, Complex z, int max_index,
                    double tail_tol = 1e-20);

    Complex z() const { return z_; }
    int max_index() const { return max_index_; }
    Complex phi(int n) const { return phi_.at(static_cast<std::size_t>(n)); }
    Complex phistar(int n) const { return phistar_.at(static_cast<std::size_t>(n)); }
    Complex tail(int n) const { return tail_.at(static_cast<std::size_t>(n)); }
    Complex g() const { return g_; }
    Complex r(int n) const;

private:
    Complex z_;
    int max_index_;
    const DecayModel* model_;
    const CoefficientFamily* family_;
    Complex g_;
    std::vector<Complex> phi_;
    std::vector<Complex> phistar_;
    std::vector<Complex> tail_;
};

Complex r_n(const SzegoApprox& approx, const DecayModel& model, int n, Complex z);

// sum_l conj(C_l) omega_l^n / (z - conj(b_l)) * D(z)^{-1}
Complex tilde_q(const SzegoApprox& approx, const DecayModel& model, int n, Complex z);

// b^{-n} phi_n(z) - tilde_q(n, z) two ways: by direct subtraction, which
// stalls at round-off once the error is below ~1e-16 |b^{-n} phi_n|, and by
// the rearrangement
//   b^{-n} [ (kappa_n - kappa_inf) Phi_n
//          + kappa_inf ( z^n (1 + G sum conj(C_l)/(conj(b_l) - z))
//                        - sum_{j=1}^n z^{j-1} R_{n-j} ) ]
// in which no large terms cancel.
struct TildeQError {
    Complex direct;
    Complex stable;
};
TildeQError tilde_q_error(const SzegoApprox& approx, const DecayModel& model, int n, Complex z);

// sum_l conj(C_l) omega_l^n prod_{k != l} (z - conj(b_k))
ComplexPoly p_n(const DecayModel& model, long long n);
ComplexPoly p_infinity(const DecayModel& model, std::span<const Complex> omega_inf);
// Smallest p <= max_p with omega_l^p = 1 for every l, or 0.
int rotation_period(const DecayModel& model, int max_p = 64, double tol = 1e-12);
// omega_l^r, the exact limits along n = m p + r.
std::vector<Complex> class_omegas(const DecayModel& model, long long r);

// Coefficients of 1 + (b c_{l-1})^{-1} z + ... + prod_{j=1}^{p-1} (b c_{l-j})^{-1} z^{p-1},
// indices of c taken mod p with c_1..c_p stored as c[0..p-1].
template <class Field>
std::vector<Field> w_ell_coeffs(const Field& b, std::span<const Field> c, int ell)
{
    const int p = static_cast<int>(c.size());
    if (p == 0) {
        raise(ErrorCode::InvalidArgument, "w_ell: empty ratio list");
    }
    for (const Field& x : c) {
        if (x == Field(0)) {
            raise(ErrorCode::ZeroRatio, "w_ell: zero ratio");
        }
    }
    std::vector<Field> out;
    out.reserve(static_cast<std::size_t>(p));
    Field acc(1);
    out.push_back(acc);
    for (int j = 1; j < p; ++j) {
        const int idx = (((ell - j - 1) % p) + p) % p;
        acc = acc / (b * c[static_cast<std::size_t>(idx)]);
        out.push_back(acc);
    }
    return out;
}

ComplexPoly w_ell(double b, std::span<const Complex> c, int ell);

// -d_inv sum_k beta_k z^k, truncated once the geometric tail is below tol.
Complex ratio_limit_series(const RatioLimitData& data, Complex z, Complex d_inv,
                           double tol = 1e-15, double margin = 0.02);

// Phi_n(z) / conj(alpha_{n-1}) and Phi_n(z) / (conj(alpha_{n-1}) Phi_n^*(z)).
Complex alpha_ratio(const CoefficientFamily& family, int n, Complex z);
Complex reversed_ratio(const CoefficientFamily& family, int n, Complex z);

struct TailBound {
    int J = 0;
    double bound = 0.0; // C (b Delta1)^n / (|z| - b Delta1)
};

// Smallest J with rho^{J+1} / (1 - rho) < rel_tol, rho = b Delta1 / |z|.
TailBound tail_bound(const AnnulusSpec& annulus, int n, Complex z, double rel_tol = 1e-12);

struct SeriesValue {
    Complex value;
    TailBound tail;
};

// sum_{j=0}^{J} z^{-j-1} R_{n+j}(z); needs traj.max_index() >= n + J.
SeriesValue s_n(const PointTrajectory& traj, const AnnulusSpec& annulus, int n);
SeriesValue s_n(const SzegoApprox& approx, const DecayModel& model, const AnnulusSpec& annulus,
                int n, Complex z);

// Continuation of the outer limit to |z| > b Delta1:
//   f(z) = 1 + G(z) sum conj(C_l) / (conj(b_l) - z) - s_0(z).
Complex outer_continuation(const SzegoApprox& approx, const DecayModel& model,
                           const AnnulusSpec& annulus, Complex z);

enum class OuterRoute {
    Auto,         // limit when |z| > b (1 + margin), continuation otherwise
    Limit,
    Continuation,
};

struct CriticalDecomposition {
    int n = 0;
    Complex z;
    Complex s_term;
    Complex interior_term; // sum conj(C_l) conj(b_l)^n (z - conj(b_l))^{-1} * G
    Complex outer_term;    // z^n f(z)
    Complex phi_value;
    double residual = 0.0;
    OuterRoute route = OuterRoute::Auto;
};

CriticalDecomposition critical_decomposition(const SzegoApprox& approx, const DecayModel& model,
                                             const AnnulusSpec& annulus, int n, Complex z,
                                             OuterRoute route = OuterRoute::Auto);

} // namespace opuc
