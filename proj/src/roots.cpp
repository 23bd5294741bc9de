#include "opuc/roots.hpp"

#include "opuc/errors.hpp"
#include "opuc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace opuc {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double golden_angle = 2.399963229728653;

double l1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

using Matrix = std::vector<std::vector<Complex>>;

void balance(Matrix& a)
{
    const std::size_t n = a.size();
    constexpr double radix = 2.0;
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double c = 0.0;
            double r = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) {
                    c += l1(a[j][i]);
                    r += l1(a[i][j]);
                }
            }
            if (c == 0.0 || r == 0.0) {
                continue;
            }
            const double s = c + r;
            double f = 1.0;
            double g = r / radix;
            while (c < g) {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix * radix;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                for (std::size_t j = 0; j < n; ++j) {
                    a[i][j] /= f;
                    a[j][i] *= f;
                }
            }
        }
    }
}

// Eigenvalues of an upper Hessenberg matrix, explicit single-shift QR with
// Givens rotations restricted to the active block.
std::vector<Complex> hessenberg_eigenvalues(Matrix h)
{
    const int n = static_cast<int>(h.size());
    std::vector<Complex> eig(static_cast<std::size_t>(n));
    int hi = n - 1;
    int iter = 0;
    int total = 0;
    const int max_total = 60 * std::max(n, 1);
    std::vector<double> cs(static_cast<std::size_t>(n));
    std::vector<Complex> sn(static_cast<std::size_t>(n));
    auto at = [&](int i, int j) -> Complex& { return h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };

    while (hi >= 0) {
        if (hi == 0) {
            eig[0] = at(0, 0);
            break;
        }
        int l = hi;
        while (l > 0) {
            const double s = l1(at(l - 1, l - 1)) + l1(at(l, l));
            if (l1(at(l, l - 1)) <= eps * (s == 0.0 ? 1.0 : s)) {
                at(l, l - 1) = 0.0;
                break;
            }
            --l;
        }
        if (l == hi) {
            eig[static_cast<std::size_t>(hi)] = at(hi, hi);
            --hi;
            iter = 0;
            continue;
        }
        if (++total > max_total) {
            raise(ErrorCode::NoConvergence, "companion QR did not converge");
        }
        ++iter;
        Complex mu;
        if (iter % 11 == 10) {
            // exceptional shift
            mu = at(hi, hi) + Complex(0.75 * l1(at(hi, hi - 1)), 0.4375 * l1(at(hi, hi - 1)));
        } else {
            const Complex a = at(hi - 1, hi - 1);
            const Complex b = at(hi - 1, hi);
            const Complex c = at(hi, hi - 1);
            const Complex d = at(hi, hi);
            const Complex half = 0.5 * (a + d);
            const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
            const Complex m1 = half + disc;
            const Complex m2 = half - disc;
            mu = std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
        }
        for (int k = l; k <= hi; ++k) {
            at(k, k) -= mu;
        }
        for (int k = l; k < hi; ++k) {
            const Complex a = at(k, k);
            const Complex b = at(k + 1, k);
            const double r = std::hypot(std::abs(a), std::abs(b));
            double c;
            Complex s;
            if (r == 0.0) {
                c = 1.0;
                s = 0.0;
            } else if (a == Complex{}) {
                c = 0.0;
                s = std::conj(b) / r;
            } else {
                c = std::abs(a) / r;
                s = (a / std::abs(a)) * std::conj(b) / r;
            }
            cs[static_cast<std::size_t>(k)] = c;
            sn[static_cast<std::size_t>(k)] = s;
            for (int j = k; j <= hi; ++j) {
                const Complex t1 = at(k, j);
                const Complex t2 = at(k + 1, j);
                at(k, j) = c * t1 + s * t2;
                at(k + 1, j) = -std::conj(s) * t1 + c * t2;
            }
        }
        for (int k = l; k < hi; ++k) {
            const double c = cs[static_cast<std::size_t>(k)];
            const Complex s = sn[static_cast<std::size_t>(k)];
            const int top = std::min(k + 1, hi);
            for (int i = l; i <= top; ++i) {
                const Complex t1 = at(i, k);
                const Complex t2 = at(i, k + 1);
                at(i, k) = t1 * c + t2 * std::conj(s);
                at(i, k + 1) = -t1 * s + t2 * c;
            }
        }
        for (int k = l; k <= hi; ++k) {
            at(k, k) += mu;
        }
    }
    return eig;
}

ComplexPoly normalized(const ComplexPoly& p)
{
    return p * Complex(1.0 / p.max_abs_coeff());
}

bool residual_converged(const ComplexPoly& p, Complex z)
{
    return std::abs(p(z)) <= 8.0 * eps * p.abs_eval(std::abs(z));
}

struct SolveAttempt {
    std::vector<Complex> roots;
    int iterations = 0;
    bool converged = false;
};

SolveAttempt aberth(const ComplexPoly& p, const RootOptions& opts)
{
    const int n = p.degree();
    SolveAttempt out;
    double radius = opts.initial_radius.value_or(
        std::pow(std::abs(p.coeff(0) / p.leading()), 1.0 / n));
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        radius = 1.0;
    }
    std::mt19937_64 gen(opts.seed);
    const double jitter = std::uniform_real_distribution<double>(0.0, 0.5)(gen);
    const double theta0 = (golden_angle + jitter * 2.0 * std::numbers::pi) / n;
    out.roots.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double frac = std::fmod(k * golden_angle / (2.0 * std::numbers::pi), 1.0);
        out.roots[static_cast<std::size_t>(k)] =
            std::polar(radius * (1.0 + 0.01 * (frac - 0.5)), theta0 + 2.0 * std::numbers::pi * k / n);
    }
    std::vector<std::uint8_t> active(static_cast<std::size_t>(n), 1);
    std::vector<Complex> corr(static_cast<std::size_t>(n));
    for (int it = 1; it <= opts.max_iterations; ++it) {
        out.iterations = it;
        if (opts.parallel) {
            kernels::parallel::aberth_corrections(p, out.roots, active, corr);
        } else {
            kernels::serial::aberth_corrections(p, out.roots, active, corr);
        }
        bool all = true;
        for (std::size_t k = 0; k < out.roots.size(); ++k) {
            if (!active[k]) {
                continue;
            }
            out.roots[k] -= corr[k];
            const bool tiny = std::abs(corr[k]) <= 2.0 * eps * std::abs(out.roots[k]);
            if (tiny || residual_converged(p, out.roots[k])) {
                active[k] = 0;
            } else {
                all = false;
            }
        }
        if (all) {
            out.converged = true;
            break;
        }
    }
    return out;
}

double residual_ratio(const ComplexPoly& p, Complex z)
{
    const double scale = p.max_abs_coeff() * std::pow(1.0 + std::abs(z), p.degree());
    return std::abs(p(z)) / scale;
}

void vieta_errors(const ComplexPoly& p, const std::vector<Complex>& roots, double& sum_err,
                  double& prod_err)
{
    const int n = p.degree();
    Complex sum{};
    double abs_sum = 0.0;
    for (const Complex& z : roots) {
        sum += z;
        abs_sum += std::abs(z);
    }
    const Complex expected_sum = -p.coeff(n - 1) / p.leading();
    sum_err = std::abs(sum - expected_sum) / std::max(1.0, abs_sum);

    // Product through log-moduli and summed arguments, so degree ~ 300 with
    // |z| ~ 1/2 does not underflow.
    double log_mod = 0.0;
    double arg = 0.0;
    for (const Complex& z : roots) {
        log_mod += std::log(std::abs(z));
        arg += std::arg(z);
    }
    const Complex expected = (n % 2 == 0 ? 1.0 : -1.0) * p.coeff(0) / p.leading();
    if (expected == Complex{}) {
        prod_err = log_mod < std::log(std::numeric_limits<double>::min()) ? 0.0 : 1.0;
        return;
    }
    const double ratio_mod = std::exp(log_mod - std::log(std::abs(expected)));
    const double ratio_arg = arg - std::arg(expected);
    prod_err = std::abs(std::polar(ratio_mod, ratio_arg) - 1.0);
}

void finish(const ComplexPoly& p, RootSet& rs, const RootOptions& opts)
{
    const std::size_t n = rs.roots.size();
    rs.residuals.resize(n);
    rs.max_residual_ratio = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        rs.residuals[k] = std::abs(p(rs.roots[k]));
        rs.max_residual_ratio = std::max(rs.max_residual_ratio, residual_ratio(p, rs.roots[k]));
    }
    double scale = 1.0;
    for (const Complex& z : rs.roots) {
        scale = std::max(scale, std::abs(z));
    }
    rs.multiplicity.assign(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        int count = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(rs.roots[i] - rs.roots[j]) < opts.cluster_tol * scale) {
                ++count;
            }
        }
        rs.multiplicity[i] = count;
    }
    vieta_errors(p, rs.roots, rs.sum_error, rs.product_error);
}

bool acceptable(const RootSet& rs, const RootOptions& opts)
{
    return rs.max_residual_ratio <= opts.residual_tol && rs.sum_error <= opts.vieta_tol &&
           rs.product_error <= opts.vieta_tol;
}

std::string diagnostics(const RootSet& rs)
{
    std::ostringstream os;
    os << "residual ratio " << rs.max_residual_ratio << ", Vieta sum " << rs.sum_error
       << ", Vieta product " << rs.product_error << ", iterations " << rs.iterations;
    return os.str();
}

void sort_roots(std::vector<Complex>& roots)
{
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        double aa = std::arg(a);
        double ab = std::arg(b);
        if (aa < 0.0) aa += 2.0 * std::numbers::pi;
        if (ab < 0.0) ab += 2.0 * std::numbers::pi;
        if (aa != ab) {
            return aa < ab;
        }
        return std::abs(a) < std::abs(b);
    });
}

} // namespace

std::vector<Complex> companion_roots(const ComplexPoly& p)
{
    const int n = p.degree();
    if (n < 1) {
        raise(ErrorCode::InvalidArgument, "companion_roots: degree must be at least 1");
    }
    Matrix a(static_cast<std::size_t>(n), std::vector<Complex>(static_cast<std::size_t>(n)));
    const Complex lead = p.leading();
    for (int j = 0; j < n; ++j) {
        a[0][static_cast<std::size_t>(j)] = -p.coeff(n - 1 - j) / lead;
    }
    for (int i = 1; i < n; ++i) {
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)] = 1.0;
    }
    balance(a);
    return hessenberg_eigenvalues(std::move(a));
}

PolishResult polish(const ComplexPoly& p, Complex z0, int max_iterations)
{
    if (p.degree() < 1) {
        raise(ErrorCode::InvalidArgument, "polish: degree must be at least 1");
    }
    const ComplexPoly dp = p.derivative();
    PolishResult res;
    res.root = z0;
    for (int it = 0; it <= max_iterations; ++it) {
        Complex d;
        const Complex v = p.eval_with_derivative(res.root, d);
        res.residual = std::abs(v);
        res.iterations = it;
        if (res.residual <= 1e-13 * p.abs_eval(std::abs(res.root))) {
            res.multiple = std::abs(d) <= 1e-6 * dp.abs_eval(std::abs(res.root));
            return res;
        }
        if (it == max_iterations || d == Complex{}) {
            break;
        }
        res.root -= v / d;
    }
    raise(ErrorCode::NoConvergence, "polish: Newton did not reach the residual target");
}

RootSet find_roots(const ComplexPoly& p, const RootOptions& opts)
{
    const int degree = p.degree();
    if (degree < 1) {
        raise(ErrorCode::InvalidArgument, "find_roots: degree must be at least 1");
    }
    // Exact zero roots first.
    int zeros = 0;
    while (p.coeff(zeros) == Complex{}) {
        ++zeros;
    }
    std::vector<Complex> reduced(p.coeffs().begin() + zeros, p.coeffs().end());
    const ComplexPoly q = normalized(ComplexPoly(std::move(reduced)));

    RootSet rs;
    auto assemble = [&](std::vector<Complex> found) {
        found.insert(found.end(), static_cast<std::size_t>(zeros), Complex{});
        sort_roots(found);
        rs.roots = std::move(found);
        finish(p, rs, opts);
    };

    if (q.degree() == 0) {
        rs.iterations = 0;
        assemble({});
        return rs;
    }
    if (q.degree() == 1) {
        assemble({-q.coeff(0) / q.coeff(1)});
        return rs;
    }
    if (!opts.force_companion) {
        SolveAttempt att = aberth(q, opts);
        rs.iterations = att.iterations;
        rs.method = RootMethod::Simultaneous;
        if (att.converged) {
            assemble(std::move(att.roots));
            if (acceptable(rs, opts)) {
                return rs;
            }
        }
    }
    std::vector<Complex> eig = companion_roots(q);
    for (Complex& z : eig) {
        // Keep the Newton step only when it lowers the residual.
        Complex d;
        const Complex v = q.eval_with_derivative(z, d);
        if (d != Complex{}) {
            const Complex w = z - v / d;
            if (std::abs(q(w)) < std::abs(v)) {
                z = w;
            }
        }
    }
    rs.method = RootMethod::CompanionFallback;
    assemble(std::move(eig));
    if (!acceptable(rs, opts)) {
        raise(ErrorCode::NoConvergence, "root finding failed: " + diagnostics(rs));
    }
    return rs;
}

} // namespace opuc
