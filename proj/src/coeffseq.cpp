#include "opuc/coeffseq.hpp"

#include "opuc/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace opuc {

namespace {

constexpr double modulus_tol = 1e-12;
constexpr int resync_interval = 64;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

Complex product(std::span<const Complex> c)
{
    Complex p = 1.0;
    for (const Complex& x : c) {
        p *= x;
    }
    return p;
}

void validate_remainder(Remainder& rem, std::size_t horizon)
{
    if (rem.amplitude < 0.0) {
        raise(ErrorCode::InvalidArgument, "remainder amplitude must be nonnegative");
    }
    if (rem.seeded && rem.xi.empty()) {
        std::mt19937_64 gen(rem.seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        rem.xi.reserve(horizon);
        for (std::size_t n = 0; n < horizon; ++n) {
            const double r = std::sqrt(u(gen));
            const double theta = 2.0 * std::numbers::pi * u(gen);
            rem.xi.push_back(std::polar(r, theta));
        }
    }
}

} // namespace

Complex DecayModel::omega(std::size_t l) const { return std::conj(nodes.at(l)) / b; }

Complex DecayModel::leading_sum(long long n) const
{
    Complex s{};
    for (std::size_t l = 0; l < nodes.size(); ++l) {
        s += amplitudes[l] * ipow(nodes[l], n);
    }
    return s;
}

void DecayModel::validate() const
{
    if (!(b > 0.0 && b < 1.0)) {
        raise(ErrorCode::InvalidArgument, "decay modulus b must lie in (0,1)");
    }
    if (amplitudes.size() != nodes.size()) {
        raise(ErrorCode::InvalidArgument, "amplitude and node lists differ in length");
    }
    if (!(delta > 0.0 && delta < 1.0) || !(delta1 > 0.0 && delta1 < 1.0)) {
        raise(ErrorCode::InvalidArgument, "Delta and Delta1 must lie in (0,1)");
    }
    for (std::size_t l = 0; l < nodes.size(); ++l) {
        if (std::abs(std::abs(nodes[l]) - b) > modulus_tol * b) {
            raise(ErrorCode::InvalidArgument, "node modulus differs from b");
        }
        if (amplitudes[l] == Complex{}) {
            raise(ErrorCode::InvalidArgument, "zero amplitude");
        }
        for (std::size_t k = 0; k < l; ++k) {
            if (std::abs(nodes[l] - nodes[k]) <= modulus_tol * b) {
                raise(ErrorCode::InvalidArgument, "nodes must be distinct");
            }
        }
    }
}

CoefficientFamily::CoefficientFamily(Rule rule, std::string label, std::size_t horizon)
    : rule_(std::move(rule)), label_(std::move(label)), horizon_(horizon)
{
    std::visit(overloaded{
                   [&](ExpSum& e) {
                       e.model.validate();
                       if (e.remainder) {
                           validate_remainder(*e.remainder, horizon_);
                       }
                   },
                   [](PeriodicRatio& p) {
                       if (!(p.b > 0.0 && p.b < 1.0) || p.c.empty()) {
                           raise(ErrorCode::InvalidArgument, "periodic ratio needs b in (0,1) and p >= 1");
                       }
                       for (const Complex& c : p.c) {
                           if (c == Complex{}) {
                               raise(ErrorCode::ZeroRatio, "ratio factor c_j = 0");
                           }
                       }
                       if (std::abs(product(p.c) - 1.0) > modulus_tol) {
                           raise(ErrorCode::InvalidArgument, "ratio factors must multiply to 1");
                       }
                   },
                   [](Table& t) {
                       if (t.b && !(*t.b > 0.0 && *t.b <= 1.0)) {
                           raise(ErrorCode::InvalidArgument, "table decay annotation must lie in (0,1]");
                       }
                       for (std::size_t n = 0; n < t.values.size(); ++n) {
                           if (!(std::abs(t.values[n]) < 1.0)) {
                               raise(ErrorCode::VerblunskyViolation,
                                     "|alpha_" + std::to_string(n) + "| >= 1 in table");
                           }
                       }
                   },
                   [](Pure& p) {
                       if (!(p.b > 0.0 && p.b < 1.0)) {
                           raise(ErrorCode::InvalidArgument, "decay modulus b must lie in (0,1)");
                       }
                       if (p.c == Complex{}) {
                           raise(ErrorCode::InvalidArgument, "zero amplitude");
                       }
                   },
               },
               rule_);
}

Complex CoefficientFamily::raw_alpha(long long n) const { return alpha_scaled(n, 1.0); }

Complex CoefficientFamily::alpha(long long n) const
{
    if (n < 0) {
        raise(ErrorCode::InvalidArgument, "coefficient index must be nonnegative");
    }
    const Complex a = raw_alpha(n);
    if (!(std::abs(a) < 1.0)) {
        std::ostringstream os;
        os << "|alpha_" << n << "| = " << std::abs(a) << " >= 1";
        raise(ErrorCode::VerblunskyViolation, os.str());
    }
    return a;
}

std::vector<Complex> CoefficientFamily::alphas(std::size_t count) const
{
    std::vector<Complex> out;
    out.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        out.push_back(alpha(static_cast<long long>(n)));
    }
    return out;
}

Complex CoefficientFamily::alpha_scaled(long long n, Complex s) const
{
    return std::visit(
        overloaded{
            [&](const ExpSum& e) {
                Complex v{};
                for (std::size_t l = 0; l < e.model.size(); ++l) {
                    v += e.model.amplitudes[l] * ipow(e.model.nodes[l] * s, n);
                }
                if (e.remainder && static_cast<std::size_t>(n) < e.remainder->xi.size()) {
                    const double rate = e.model.b * e.model.delta;
                    v += e.remainder->amplitude * e.remainder->xi[static_cast<std::size_t>(n)] *
                         ipow(rate * s, n);
                }
                return v;
            },
            [&](const PeriodicRatio& p) {
                const long long period = static_cast<long long>(p.c.size());
                const long long m = n / period;
                const long long r = n % period;
                Complex v = p.alpha0 * ipow(p.b * s, n) * ipow(product(p.c), m);
                for (long long j = 1; j <= r; ++j) {
                    v *= p.c[static_cast<std::size_t>(j - 1)];
                }
                return v;
            },
            [&](const Table& t) {
                if (static_cast<std::size_t>(n) >= t.values.size()) {
                    return Complex{};
                }
                return t.values[static_cast<std::size_t>(n)] * ipow(s, n);
            },
            [&](const Pure& p) { return p.c * ipow(p.b * s, n); },
        },
        rule_);
}

double CoefficientFamily::decay_rate() const
{
    return std::visit(overloaded{
                          [](const ExpSum& e) { return e.model.b; },
                          [](const PeriodicRatio& p) { return p.b; },
                          [](const Table& t) { return t.b.value_or(0.0); },
                          [](const Pure& p) { return p.b; },
                      },
                      rule_);
}

bool CoefficientFamily::is_free() const
{
    return std::visit(overloaded{
                          [](const ExpSum& e) {
                              return e.model.size() == 0 &&
                                     (!e.remainder || e.remainder->amplitude == 0.0);
                          },
                          [](const PeriodicRatio&) { return false; },
                          [](const Table& t) {
                              for (const Complex& v : t.values) {
                                  if (v != Complex{}) {
                                      return false;
                                  }
                              }
                              return true;
                          },
                          [](const Pure&) { return false; },
                      },
                      rule_);
}

AlphaStream::AlphaStream(const CoefficientFamily& family, Complex s) : family_(&family), s_(s)
{
    std::visit(overloaded{
                   [&](const ExpSum& e) {
                       for (std::size_t l = 0; l < e.model.size(); ++l) {
                           steps_.push_back(e.model.amplitudes[l] == Complex{} ? 0.0 : e.model.nodes[l] * s);
                       }
                   },
                   [](const PeriodicRatio&) {},
                   [&](const Table&) { steps_.push_back(s); },
                   [&](const Pure& p) { steps_.push_back(p.b * s); },
               },
               family.rule());
    resync();
}

void AlphaStream::resync()
{
    std::visit(overloaded{
                   [&](const ExpSum& e) {
                       powers_.resize(e.model.size());
                       for (std::size_t l = 0; l < e.model.size(); ++l) {
                           powers_[l] = e.model.amplitudes[l] * ipow(steps_[l], k_);
                       }
                   },
                   [&](const PeriodicRatio&) { running_ = family_->alpha_scaled(k_, s_); },
                   [&](const Table&) { powers_.assign(1, ipow(s_, k_)); },
                   [&](const Pure& p) { powers_.assign(1, p.c * ipow(steps_[0], k_)); },
               },
               family_->rule());
}

Complex AlphaStream::next()
{
    if (k_ > 0 && k_ % resync_interval == 0) {
        resync();
    }
    Complex value = std::visit(
        overloaded{
            [&](const ExpSum& e) {
                Complex v{};
                for (std::size_t l = 0; l < powers_.size(); ++l) {
                    v += powers_[l];
                    powers_[l] *= steps_[l];
                }
                if (e.remainder && static_cast<std::size_t>(k_) < e.remainder->xi.size()) {
                    v += e.remainder->amplitude * e.remainder->xi[static_cast<std::size_t>(k_)] *
                         ipow(e.model.b * e.model.delta * s_, k_);
                }
                return v;
            },
            [&](const PeriodicRatio& p) {
                const Complex v = running_;
                const long long next_index = k_ + 1;
                running_ *= p.b * s_ * cyclic(p.c, next_index);
                return v;
            },
            [&](const Table& t) {
                Complex v{};
                if (static_cast<std::size_t>(k_) < t.values.size()) {
                    v = t.values[static_cast<std::size_t>(k_)] * powers_[0];
                }
                powers_[0] *= steps_[0];
                return v;
            },
            [&](const Pure&) {
                const Complex v = powers_[0];
                powers_[0] *= steps_[0];
                return v;
            },
        },
        family_->rule());
    ++k_;
    return value;
}

Complex cyclic(std::span<const Complex> c, long long k)
{
    const long long p = static_cast<long long>(c.size());
    const long long idx = (((k - 1) % p) + p) % p;
    return c[static_cast<std::size_t>(idx)];
}

std::vector<Complex> ratios(const CoefficientFamily& family, long long n, int p)
{
    if (n < 1 || p < 1) {
        raise(ErrorCode::InvalidArgument, "ratios need n >= 1 and p >= 1");
    }
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) {
        const Complex den = family.alpha(n + j - 1);
        if (den == Complex{}) {
            raise(ErrorCode::RatioUndefined, "alpha_" + std::to_string(n + j - 1) + " = 0");
        }
        out.push_back(family.alpha(n + j) / den);
    }
    return out;
}

DecayModel infer_model(const CoefficientFamily& family)
{
    if (const auto* e = std::get_if<ExpSum>(&family.rule())) {
        return e->model;
    }
    if (const auto* p = std::get_if<Pure>(&family.rule())) {
        DecayModel m;
        m.b = p->b;
        m.amplitudes = {p->c};
        m.nodes = {Complex(p->b, 0.0)};
        return m;
    }
    raise(ErrorCode::ModelUnavailable, "family '" + family.label() + "' carries no decay model");
}

RatioLimitData geometric_ratio_limit(double b)
{
    return {[b](int k) { return Complex(ipow(b, -k), 0.0); }, b};
}

RatioLimitData periodic_ratio_limit(double b, std::span<const Complex> c, int ell)
{
    std::vector<Complex> factors(c.begin(), c.end());
    const int p = static_cast<int>(factors.size());
    // beta_k = prod_{j=1}^{k} conj(b c_{ell-j})^{-1}, periodic up to b^{-p}.
    std::vector<Complex> head(static_cast<std::size_t>(p), 1.0);
    for (int k = 1; k < p; ++k) {
        head[static_cast<std::size_t>(k)] =
            head[static_cast<std::size_t>(k - 1)] / std::conj(b * cyclic(factors, ell - k));
    }
    return {[head, b, p](int k) {
                return head[static_cast<std::size_t>(k % p)] * ipow(b, -(k / p) * p);
            },
            b};
}

namespace families {

CoefficientFamily single_geometric(double b)
{
    return CoefficientFamily(Pure{b, Complex(b, 0.0)}, "single_geometric");
}

CoefficientFamily cosine_modulated(double b)
{
    const Complex i(0.0, 1.0);
    ExpSum e;
    e.model.b = b;
    e.model.amplitudes = {b, i * b, -i * b};
    e.model.nodes = {b, i * b, -i * b};
    e.model.delta = 0.5;
    return CoefficientFamily(std::move(e), "cosine_modulated");
}

CoefficientFamily cosine_modulated_ratios(double b)
{
    PeriodicRatio p;
    p.b = b;
    p.c = {-1.0, -1.0, 3.0, 1.0 / 3.0};
    p.alpha0 = b;
    return CoefficientFamily(std::move(p), "cosine_modulated_ratios");
}

CoefficientFamily power_law(double exponent, std::size_t count)
{
    Table t;
    t.values.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        t.values.emplace_back(std::pow(static_cast<double>(n) + 2.0, -exponent), 0.0);
    }
    t.b = 1.0;
    return CoefficientFamily(std::move(t), "power_law");
}

CoefficientFamily free_case() { return CoefficientFamily(Table{}, "free"); }

} // namespace families

} // namespace opuc
