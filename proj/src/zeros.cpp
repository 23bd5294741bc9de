#include "opuc/zeros.hpp"

#include "opuc/errors.hpp"
#include "opuc/fit.hpp"
#include "opuc/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace opuc {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double arg_positive(Complex z)
{
    double a = std::arg(z);
    if (a < 0.0) {
        a += two_pi;
    }
    return a >= two_pi ? 0.0 : a + 0.0; // also maps -0 to +0
}

double median(std::vector<double> v)
{
    if (v.empty()) {
        return 0.0;
    }
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

} // namespace

std::string to_string(ZeroClass c)
{
    switch (c) {
    case ZeroClass::Interior: return "interior";
    case ZeroClass::Band: return "band";
    case ZeroClass::NevaiTotik: return "nt";
    }
    return "unknown";
}

ZeroReport classify(const SzegoApprox& approx, const DecayModel& model, int n,
                    const ClassifyOptions& opts)
{
    if (model.size() == 0) {
        raise(ErrorCode::ModelUnavailable, "classification needs a decay model with at least one term");
    }
    if (n < static_cast<int>(model.size()) || n < 1) {
        raise(ErrorCode::InvalidArgument, "classify needs n >= L and n >= 1");
    }
    ZeroReport rep;
    rep.n = n;
    rep.b = model.b;
    const double b = model.b;
    rep.delta = opts.delta.value_or(0.2 * b);
    rep.delta_band = opts.delta_band.value_or(std::max(4.0 * std::log(n) / n * b, 0.05 * b));

    const ComplexPoly phi = monic_pair(approx.family(), n).phi;
    RootOptions ro = opts.roots;
    if (!ro.initial_radius) {
        ro.initial_radius = b;
    }
    rep.zeros = find_roots(phi, ro);
    for (const Complex& z : rep.zeros.roots) {
        if (!(std::abs(z) < 1.0)) {
            std::ostringstream os;
            os << "zero " << z << " of Phi_" << n << " outside the open unit disk";
            raise(ErrorCode::NoConvergence, os.str());
        }
    }

    if (opts.nt_candidates) {
        rep.nt_candidates = *opts.nt_candidates;
    } else {
        const double inner = b * (1.0 + approx.options().margin);
        if (inner < opts.nt_outer) {
            rep.nt_candidates = nt_zero_candidates(approx, inner, opts.nt_outer, opts.scan).points;
        }
    }

    const ComplexPoly dphi = phi.derivative();
    for (const Complex& z : rep.zeros.roots) {
        // Disk of radius n |p/p'| around z contains a zero of p.
        const Complex d = dphi(z);
        const double err = d == Complex{} ? 1.0 : n * std::abs(phi(z)) / std::abs(d);
        double best = -1.0;
        for (const Complex& c : rep.nt_candidates) {
            const double radius =
                std::max(10.0 * err, 10.0 * std::abs(c) * std::pow(b / std::abs(c), n));
            const double dist = std::abs(z - c);
            if (dist <= radius && (best < 0.0 || dist < best)) {
                best = dist;
            }
        }
        const double r = std::abs(z);
        ZeroClass cls;
        if (best >= 0.0) {
            cls = ZeroClass::NevaiTotik;
        } else if (r < b - rep.delta) {
            cls = ZeroClass::Interior;
        } else if (std::abs(r - b) < rep.delta_band) {
            cls = ZeroClass::Band;
        } else if (r > b) {
            cls = ZeroClass::NevaiTotik;
            std::ostringstream os;
            os << "zero " << z << " outside the band matches no NT candidate";
            rep.warnings.push_back(os.str());
        } else {
            cls = ZeroClass::Interior;
            std::ostringstream os;
            os << "zero " << z << " lies between the interior disk and the band";
            rep.warnings.push_back(os.str());
        }
        rep.classes.push_back(cls);
        switch (cls) {
        case ZeroClass::Interior: rep.interior.push_back(z); break;
        case ZeroClass::Band:
            rep.band.push_back(z);
            rep.max_band_offset = std::max(rep.max_band_offset, std::abs(r - b));
            break;
        case ZeroClass::NevaiTotik:
            rep.nt.push_back(z);
            rep.nt_match_distance.push_back(best);
            break;
        }
    }
    if (rep.interior.size() + 1 > model.size()) {
        std::ostringstream os;
        os << rep.interior.size() << " interior zeros exceed L - 1 = " << model.size() - 1;
        rep.warnings.push_back(os.str());
    }

    if (!rep.band.empty()) {
        std::vector<std::pair<double, bool>> pts;
        for (const Complex& z : rep.band) {
            pts.emplace_back(arg_positive(z), false);
        }
        for (const Complex& node : model.nodes) {
            pts.emplace_back(arg_positive(std::conj(node)), true);
        }
        std::sort(pts.begin(), pts.end());
        for (const auto& [a, syn] : pts) {
            rep.augmented_args.push_back(a);
            rep.synthetic.push_back(syn);
        }
        const std::size_t m = pts.size();
        for (std::size_t i = 0; i < m; ++i) {
            const double next = i + 1 < m ? pts[i + 1].first : pts[0].first + two_pi;
            rep.spacing.push_back(next - pts[i].first);
        }
        rep.gaps = gap_check(rep, model, opts.gap_flag_factor, opts.gap_tolerance);
    }
    return rep;
}

std::vector<GapRecord> gap_check(const ZeroReport& report, const DecayModel& model,
                                 double flag_factor, double tolerance)
{
    if (report.band.empty()) {
        raise(ErrorCode::BandEmpty, "gap check needs band zeros");
    }
    std::vector<double> args;
    for (const Complex& z : report.band) {
        args.push_back(arg_positive(z));
    }
    std::vector<std::size_t> order(args.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) { return args[a] < args[c]; });
    std::vector<double> raw;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const double a = args[order[i]];
        const double next = i + 1 < order.size() ? args[order[i + 1]] : args[order[0]] + two_pi;
        raw.push_back(next - a);
    }
    const double med = median(raw);
    const double n = report.n;

    std::vector<GapRecord> out;
    for (std::size_t l = 0; l < model.size(); ++l) {
        GapRecord g;
        g.term = l;
        g.node = std::conj(model.nodes[l]);
        g.node_arg = arg_positive(g.node);
        // first band zero strictly after node_arg, cyclically
        std::size_t after = 0;
        bool found = false;
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (args[order[i]] > g.node_arg) {
                after = i;
                found = true;
                break;
            }
        }
        if (!found) {
            after = 0;
        }
        const std::size_t before = (after + order.size() - 1) % order.size();
        g.after = report.band[order[after]];
        g.before = report.band[order[before]];
        double a_after = args[order[after]];
        double a_before = args[order[before]];
        if (a_after <= g.node_arg) {
            a_after += two_pi;
        }
        if (a_before > g.node_arg) {
            a_before -= two_pi;
        }
        g.offset_after = (a_after - g.node_arg) * n / two_pi;
        g.offset_before = (g.node_arg - a_before) * n / two_pi;
        g.flank_spacing = a_after - a_before;
        g.flank_ratio = g.flank_spacing / (2.0 * two_pi / n);
        g.flagged = g.flank_spacing > flag_factor * med;
        g.verdict = std::abs(g.offset_after - 1.0) <= tolerance &&
                    std::abs(g.offset_before - 1.0) <= tolerance &&
                    std::abs(g.flank_ratio - 1.0) <= tolerance;
        out.push_back(g);
    }
    return out;
}

ClockStats clock_report(const ZeroReport& report)
{
    if (report.band.empty()) {
        raise(ErrorCode::BandEmpty, "clock report needs band zeros");
    }
    ClockStats st;
    st.n = report.n;
    const double unit = two_pi / report.n;
    double total = 0.0;
    for (double s : report.spacing) {
        const double rel = std::abs(s / unit - 1.0);
        total += rel;
        st.max_relative = std::max(st.max_relative, rel);
        st.max_absolute = std::max(st.max_absolute, std::abs(s - unit));
    }
    st.mean_relative = total / static_cast<double>(report.spacing.size());
    return st;
}

double spacing_exponent(const std::vector<ClockStats>& sweep)
{
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& s : sweep) {
        xs.push_back(s.n);
        ys.push_back(s.max_absolute);
    }
    return -log_log_fit(xs, ys).slope;
}

bool InteriorMatch::complete(double delta) const
{
    if (!unmatched_predicted.empty() || !unmatched_zeros.empty()) {
        return false;
    }
    return std::all_of(pairs.begin(), pairs.end(),
                       [&](const InteriorPair& p) { return p.distance <= delta; });
}

InteriorMatch match_interior(const ZeroReport& report, const std::vector<Complex>& predicted)
{
    struct Candidate {
        double d;
        std::size_t i;
        std::size_t j;
    };
    std::vector<Candidate> all;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        for (std::size_t j = 0; j < report.interior.size(); ++j) {
            all.push_back({std::abs(predicted[i] - report.interior[j]), i, j});
        }
    }
    std::stable_sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& c) { return a.d < c.d; });
    std::vector<bool> used_p(predicted.size(), false);
    std::vector<bool> used_z(report.interior.size(), false);
    InteriorMatch m;
    for (const auto& c : all) {
        if (used_p[c.i] || used_z[c.j]) {
            continue;
        }
        used_p[c.i] = true;
        used_z[c.j] = true;
        m.pairs.push_back({predicted[c.i], report.interior[c.j], c.d});
    }
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (!used_p[i]) {
            m.unmatched_predicted.push_back(predicted[i]);
        }
    }
    for (std::size_t j = 0; j < report.interior.size(); ++j) {
        if (!used_z[j]) {
            m.unmatched_zeros.push_back(report.interior[j]);
        }
    }
    return m;
}

void require_matched(const InteriorMatch& match, double delta)
{
    if (!match.complete(delta)) {
        std::ostringstream os;
        os << match.unmatched_predicted.size() << " predicted and " << match.unmatched_zeros.size()
           << " interior zeros unmatched";
        for (const auto& p : match.pairs) {
            if (p.distance > delta) {
                os << "; pair at distance " << p.distance;
            }
        }
        raise(ErrorCode::UnmatchedZero, os.str());
    }
}

} // namespace opuc
