#pragma once

// 50-digit reference for b^{-n} kappa_n Phi_n(z) - tilde_q(n, z) on the
// three-term cosine family with b = 1/2. Everything is formed directly,
// with no rearrangement: the working precision absorbs the cancellation.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <complex>

namespace oracle {

using Real50 = boost::multiprecision::cpp_bin_float_50;
using Complex50 = boost::multiprecision::cpp_complex_50;

// alpha_n = 2^{-(n+1)} (1 + 2 cos(pi (n+1) / 2)); the cosine cycles 0, -1, 0, 1 from n = 0.
inline Real50 cosine_alpha(int n)
{
    static const int factor[4] = {1, -1, 1, 3};
    return Real50(factor[n % 4]) / pow(Real50(2), n + 1);
}

inline std::complex<double> error_term_reference(int n, std::complex<double> zd)
{
    const Complex50 z(Real50(zd.real()), Real50(zd.imag()));
    const int horizon = n + 260;
    Complex50 phi(1);
    Complex50 phistar(1);
    Real50 log_kn(0);
    Real50 log_kinf(0);
    Complex50 phi_n;
    for (int k = 0; k < horizon; ++k) {
        if (k == n) {
            phi_n = phi;
            log_kn = log_kinf;
        }
        const Real50 a = cosine_alpha(k);
        const Complex50 next = z * phi - a * phistar;
        phistar = phistar - a * z * phi;
        phi = next;
        log_kinf -= log1p(-a * a) / 2;
    }
    const Real50 b("0.5");
    const Complex50 g = phistar;                 // D(0) / D(z)
    const Complex50 d_inv = g * exp(log_kinf);   // D(z)^{-1}
    // conj(C_l) omega_l^n / (z - conj(b_l)) for the nodes 1/2, i/2, -i/2
    const Complex50 i(Real50(0), Real50(1));
    const Complex50 nodes[3] = {Complex50(b), i * b, -i * b};
    const Complex50 amps[3] = {Complex50(b), i * b, -i * b};
    Complex50 sum(0);
    for (int l = 0; l < 3; ++l) {
        const Complex50 nb = conj(nodes[l]);
        Complex50 w(1);
        for (int k = 0; k < n; ++k) {
            w *= nb / b;
        }
        sum += conj(amps[l]) * w / (z - nb);
    }
    const Complex50 err = exp(log_kn) * phi_n / pow(b, n) - sum * d_inv;
    return {static_cast<double>(err.real()), static_cast<double>(err.imag())};
}

} // namespace oracle
