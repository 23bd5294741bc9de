#pragma once

#include "opuc/complex_poly.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace opuc {

// Structural data of an exponential-sum coefficient sequence
//   alpha_n = sum_l C_l b_l^n + O((b Delta)^n),  |b_l| = b.
// An empty term list is allowed and describes a sequence with no leading
// exponential part (used for the free case alpha == 0).
struct DecayModel {
    double b = 0.5;
    std::vector<Complex> amplitudes; // C_l
    std::vector<Complex> nodes;      // b_l
    double delta = 0.5;
    double delta1 = 0.5;

    std::size_t size() const { return nodes.size(); }
    // conj(b_l) / b, unimodular.
    Complex omega(std::size_t l) const;
    // sum_l C_l b_l^n
    Complex leading_sum(long long n) const;
    void validate() const;
};

// Remainder term amplitude * xi_n * (b Delta)^n. The xi_n are either given
// explicitly or drawn once from std::mt19937_64(seed) uniformly in the unit
// disk, up to the family horizon; beyond the stored values xi_n = 0.
struct Remainder {
    double amplitude = 0.0;
    std::uint64_t seed = 0;
    bool seeded = false;
    std::vector<Complex> xi;
};

struct ExpSum {
    DecayModel model;
    std::optional<Remainder> remainder;
};

// alpha_n / alpha_{n-1} = b c_l for n = m p + l (l = 1..p), alpha_0 given.
struct PeriodicRatio {
    double b = 0.5;
    std::vector<Complex> c;
    Complex alpha0 = 0.5;
};

// Finite list, zero beyond its end. `b` optionally annotates the decay
// modulus (b = 1 for slowly decaying tables).
struct Table {
    std::vector<Complex> values;
    std::optional<double> b;
};

// alpha_n = C b^n
struct Pure {
    double b = 0.5;
    Complex c = 0.5;
};

inline constexpr std::size_t default_horizon = 4096;

class CoefficientFamily {
public:
    using Rule = std::variant<ExpSum, PeriodicRatio, Table, Pure>;

    explicit CoefficientFamily(Rule rule, std::string label = {},
                               std::size_t horizon = default_horizon);

    const Rule& rule() const { return rule_; }
    const std::string& label() const { return label_; }
    std::size_t horizon() const { return horizon_; }

    // Throws VerblunskyViolation when |alpha_n| >= 1.
    Complex alpha(long long n) const;
    std::vector<Complex> alphas(std::size_t count) const;
    // alpha_n * s^n, evaluated without forming s^n or alpha_n separately, so
    // it stays finite when one factor under- and the other overflows.
    Complex alpha_scaled(long long n, Complex s) const;
    // q with |alpha_n| <= C q^n; 0 for finite tables without annotation.
    double decay_rate() const;
    bool is_free() const;

private:
    Complex raw_alpha(long long n) const;

    Rule rule_;
    std::string label_;
    std::size_t horizon_;
};

// Sequential alpha_k s^k for k = 0, 1, 2, ... with O(terms) work per step.
class AlphaStream {
public:
    AlphaStream(const CoefficientFamily& family, Complex s);
    Complex next();
    long long index() const { return k_; }

private:
    void resync();

    const CoefficientFamily* family_;
    Complex s_;
    long long k_ = 0;
    std::vector<Complex> powers_; // per-term running powers
    std::vector<Complex> steps_;  // per-term multipliers
    Complex running_{};
};

// alpha_{n+j} / alpha_{n+j-1} for j = 0..p-1.
std::vector<Complex> ratios(const CoefficientFamily& family, long long n, int p);

// Throws ModelUnavailable for tables and periodic-ratio rules.
DecayModel infer_model(const CoefficientFamily& family);

// Limits beta_k of conj(alpha_{n-k-1}) / conj(alpha_{n-1}) along a subsequence.
struct RatioLimitData {
    std::function<Complex(int)> beta;
    double radius = 0.0; // guaranteed radius of convergence of sum beta_k z^k
};

RatioLimitData geometric_ratio_limit(double b);
// Limits along n = m p + ell for a periodic-ratio rule with ratios b c_l.
RatioLimitData periodic_ratio_limit(double b, std::span<const Complex> c, int ell);

// Indexing helper: c_k with k taken mod p, c_1..c_p stored as c[0..p-1].
Complex cyclic(std::span<const Complex> c, long long k);

namespace families {

// alpha_n = b^{n+1}
CoefficientFamily single_geometric(double b = 0.5);
// alpha_n = b^{n+1} (1 + 2 cos(pi (n+1) / 2)) as a three-term exponential sum.
CoefficientFamily cosine_modulated(double b = 0.5);
// The same sequence written through its period-4 ratios.
CoefficientFamily cosine_modulated_ratios(double b = 0.5);
// alpha_n = (n+2)^{-exponent}, tabulated to `count` entries, annotated b = 1.
CoefficientFamily power_law(double exponent, std::size_t count = default_horizon);
CoefficientFamily free_case();

} // namespace families

} // namespace opuc
