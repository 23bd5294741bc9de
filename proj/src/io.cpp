#include "opuc/io.hpp"

#include "opuc/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace opuc {

std::string format_double(double x)
{
    if (x == 0.0) {
        return "0"; // folds -0
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j)
{
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    raise(ErrorCode::Config, "expected a number or [re, im], got " + j.dump());
}

namespace {

const Json& require(const Json& j, const char* key)
{
    if (!j.contains(key)) {
        raise(ErrorCode::Config, std::string("family spec lacks \"") + key + "\"");
    }
    return j.at(key);
}

double number(const Json& j, const char* key)
{
    const Json& v = require(j, key);
    if (!v.is_number()) {
        raise(ErrorCode::Config, std::string("\"") + key + "\" must be a number");
    }
    return v.get<double>();
}

std::vector<Complex> complex_list(const Json& j, const char* key)
{
    const Json& v = require(j, key);
    if (!v.is_array()) {
        raise(ErrorCode::Config, std::string("\"") + key + "\" must be a list");
    }
    std::vector<Complex> out;
    for (const auto& e : v) {
        out.push_back(complex_from_json(e));
    }
    return out;
}

// Library validation failures inside a spec are configuration errors.
template <class F>
CoefficientFamily build(F&& make)
{
    try {
        return make();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Config) {
            throw;
        }
        raise(ErrorCode::Config, std::string("invalid family: ") + e.what());
    }
}

} // namespace

CoefficientFamily family_from_json(const Json& j, std::uint64_t default_seed)
{
    if (!j.is_object()) {
        raise(ErrorCode::Config, "family spec must be a JSON object");
    }
    const Json& kind_j = require(j, "kind");
    if (!kind_j.is_string()) {
        raise(ErrorCode::Config, "\"kind\" must be a string");
    }
    const std::string kind = kind_j.get<std::string>();
    const std::string label = j.value("label", kind);
    const std::size_t horizon = j.value("horizon", default_horizon);

    if (kind == "expsum") {
        ExpSum e;
        e.model.b = number(j, "b");
        e.model.delta = j.value("delta", 0.5);
        e.model.delta1 = j.value("delta1", 0.5);
        const Json& terms = require(j, "terms");
        if (!terms.is_array()) {
            raise(ErrorCode::Config, "\"terms\" must be a list");
        }
        for (const auto& t : terms) {
            e.model.amplitudes.push_back(complex_from_json(require(t, "C")));
            e.model.nodes.push_back(complex_from_json(require(t, "b")));
        }
        if (j.contains("remainder")) {
            const Json& r = j.at("remainder");
            Remainder rem;
            rem.amplitude = number(r, "amplitude");
            if (r.contains("xi")) {
                rem.xi = complex_list(r, "xi");
            } else {
                rem.seeded = true;
                rem.seed = r.value("seed", default_seed);
            }
            e.remainder = rem;
        }
        return build([&] { return CoefficientFamily(std::move(e), label, horizon); });
    }
    if (kind == "periodic_ratio") {
        PeriodicRatio p;
        p.b = number(j, "b");
        p.c = complex_list(j, "c");
        if (j.contains("p") && j.at("p").get<std::size_t>() != p.c.size()) {
            raise(ErrorCode::Config, "\"p\" does not match the length of \"c\"");
        }
        p.alpha0 = j.contains("alpha0") ? complex_from_json(j.at("alpha0")) : Complex(p.b);
        return build([&] { return CoefficientFamily(std::move(p), label, horizon); });
    }
    if (kind == "pure") {
        Pure p;
        p.b = number(j, "b");
        p.c = complex_from_json(require(j, "C"));
        return build([&] { return CoefficientFamily(p, label, horizon); });
    }
    if (kind == "table") {
        Table t;
        t.values = complex_list(j, "values");
        if (j.contains("b")) {
            t.b = number(j, "b");
        }
        return build([&] { return CoefficientFamily(std::move(t), label, horizon); });
    }
    raise(ErrorCode::Config, "unknown family kind \"" + kind + "\"");
}

CoefficientFamily load_family(const std::filesystem::path& path, std::uint64_t default_seed)
{
    std::ifstream in(path);
    if (!in) {
        raise(ErrorCode::Config, "cannot open " + path.string());
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::Config, path.string() + ": " + e.what());
    }
    try {
        return family_from_json(j, default_seed);
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::Config, path.string() + ": " + e.what());
    }
}

Json family_to_json(const CoefficientFamily& family)
{
    Json j;
    std::visit(
        [&](const auto& rule) {
            using T = std::decay_t<decltype(rule)>;
            if constexpr (std::is_same_v<T, ExpSum>) {
                j["kind"] = "expsum";
                j["b"] = rule.model.b;
                Json terms = Json::array();
                for (std::size_t l = 0; l < rule.model.size(); ++l) {
                    terms.push_back({{"C", complex_to_json(rule.model.amplitudes[l])},
                                     {"b", complex_to_json(rule.model.nodes[l])}});
                }
                j["terms"] = terms;
                j["delta"] = rule.model.delta;
                j["delta1"] = rule.model.delta1;
                if (rule.remainder) {
                    Json r;
                    r["amplitude"] = rule.remainder->amplitude;
                    if (rule.remainder->seeded) {
                        r["seed"] = rule.remainder->seed;
                    } else {
                        Json xi = Json::array();
                        for (const Complex& x : rule.remainder->xi) {
                            xi.push_back(complex_to_json(x));
                        }
                        r["xi"] = xi;
                    }
                    j["remainder"] = r;
                }
            } else if constexpr (std::is_same_v<T, PeriodicRatio>) {
                j["kind"] = "periodic_ratio";
                j["b"] = rule.b;
                j["p"] = rule.c.size();
                Json c = Json::array();
                for (const Complex& x : rule.c) {
                    c.push_back(complex_to_json(x));
                }
                j["c"] = c;
                j["alpha0"] = complex_to_json(rule.alpha0);
            } else if constexpr (std::is_same_v<T, Table>) {
                j["kind"] = "table";
                if (rule.b) {
                    j["b"] = *rule.b;
                }
                Json v = Json::array();
                for (const Complex& x : rule.values) {
                    v.push_back(complex_to_json(x));
                }
                j["values"] = v;
            } else {
                j["kind"] = "pure";
                j["b"] = rule.b;
                j["C"] = complex_to_json(rule.c);
            }
        },
        family.rule());
    j["label"] = family.label();
    return j;
}

void write_coefficients_csv(std::ostream& out, const CoefficientFamily& family, int N)
{
    out << "n,re,im\n";
    for (int n = 0; n < N; ++n) {
        const Complex a = family.alpha(n);
        out << n << ',' << format_double(a.real()) << ',' << format_double(a.imag()) << '\n';
    }
}

Json poly_to_json(int n, const ComplexPoly& p)
{
    Json c = Json::array();
    for (const Complex& x : p.coeffs()) {
        c.push_back(complex_to_json(x));
    }
    return {{"n", n}, {"coeffs", c}};
}

ComplexPoly poly_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_array()) {
        raise(ErrorCode::Config, "polynomial JSON needs a \"coeffs\" list");
    }
    std::vector<Complex> c;
    for (const auto& e : j.at("coeffs")) {
        c.push_back(complex_from_json(e));
    }
    return ComplexPoly(std::move(c));
}

void write_roots_csv(std::ostream& out, int n, const RootSet& roots,
                     const std::vector<ZeroClass>* classes)
{
    out << "n,index,re,im,modulus,arg,residual";
    if (classes) {
        out << ",class";
    }
    out << '\n';
    for (std::size_t k = 0; k < roots.roots.size(); ++k) {
        const Complex z = roots.roots[k];
        double a = std::arg(z);
        if (a < 0.0) {
            a += 2.0 * std::numbers::pi;
        }
        out << n << ',' << k << ',' << format_double(z.real()) << ',' << format_double(z.imag())
            << ',' << format_double(std::abs(z)) << ',' << format_double(a) << ','
            << format_double(roots.residuals[k]);
        if (classes) {
            out << ',' << to_string((*classes)[k]);
        }
        out << '\n';
    }
}

namespace {

Json complex_list_json(const std::vector<Complex>& v)
{
    Json a = Json::array();
    for (const Complex& z : v) {
        a.push_back(complex_to_json(z));
    }
    return a;
}

std::string method_name(RootMethod m)
{
    return m == RootMethod::Simultaneous ? "simultaneous" : "companion";
}

} // namespace

Json report_to_json(const ZeroReport& r)
{
    Json j;
    j["n"] = r.n;
    j["b"] = r.b;
    j["delta"] = r.delta;
    j["delta_band"] = r.delta_band;
    j["counts"] = {{"interior", r.interior.size()}, {"band", r.band.size()}, {"nt", r.nt.size()}};
    j["interior"] = complex_list_json(r.interior);
    j["band"] = complex_list_json(r.band);
    j["nt"] = complex_list_json(r.nt);
    j["nt_candidates"] = complex_list_json(r.nt_candidates);
    j["nt_match_distance"] = r.nt_match_distance;
    j["max_band_offset"] = r.max_band_offset;
    j["spacing"] = r.spacing;
    Json gaps = Json::array();
    for (const auto& g : r.gaps) {
        gaps.push_back({{"term", g.term},
                        {"node", complex_to_json(g.node)},
                        {"node_arg", g.node_arg},
                        {"before", complex_to_json(g.before)},
                        {"after", complex_to_json(g.after)},
                        {"offset_before", g.offset_before},
                        {"offset_after", g.offset_after},
                        {"flank_spacing", g.flank_spacing},
                        {"flank_ratio", g.flank_ratio},
                        {"flagged", g.flagged},
                        {"verdict", g.verdict}});
    }
    j["gaps"] = gaps;
    j["solver"] = {{"method", method_name(r.zeros.method)},
                   {"iterations", r.zeros.iterations},
                   {"max_residual_ratio", r.zeros.max_residual_ratio},
                   {"vieta_sum_error", r.zeros.sum_error},
                   {"vieta_product_error", r.zeros.product_error}};
    j["warnings"] = r.warnings;
    return j;
}

Json clock_to_json(const ClockStats& s)
{
    return {{"n", s.n},
            {"mean_relative", s.mean_relative},
            {"max_relative", s.max_relative},
            {"max_absolute", s.max_absolute}};
}

Json bound_report_to_json(const BoundReport& r)
{
    return {{"q", r.q},
            {"qprime", r.qprime},
            {"C", r.C},
            {"C1", r.C1},
            {"Cqprime", r.Cqprime},
            {"Ctilde", r.Ctilde},
            {"max_disk_phistar", r.max_disk_phistar},
            {"max_outer_phi", r.max_outer_phi},
            {"max_inner_phi", r.max_inner_phi},
            {"worst_ratio", r.worst_ratio},
            {"fitted_rate", r.fitted_rate},
            {"predicted_rate", r.predicted_rate},
            {"holds", r.holds()}};
}

void write_bound_csv(std::ostream& out, const BoundReport& r)
{
    out << "n,disk_phistar,outer_phi,annulus_phistar,inner_phi,limit_error\n";
    for (const auto& row : r.rows) {
        out << row.n << ',' << format_double(row.disk_phistar) << ','
            << format_double(row.outer_phi) << ',' << format_double(row.annulus_phistar) << ','
            << format_double(row.inner_phi) << ',' << format_double(row.limit_error) << '\n';
    }
}

void write_decomposition_csv(std::ostream& out, const std::vector<CriticalDecomposition>& rows)
{
    out << "n,re_z,im_z,abs_s,abs_interior,abs_outer,residual\n";
    for (const auto& d : rows) {
        out << d.n << ',' << format_double(d.z.real()) << ',' << format_double(d.z.imag()) << ','
            << format_double(std::abs(d.s_term)) << ',' << format_double(std::abs(d.interior_term))
            << ',' << format_double(std::abs(d.outer_term)) << ',' << format_double(d.residual)
            << '\n';
    }
}

void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

void write_text_file(const std::filesystem::path& path, const std::string& content)
{
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        raise(ErrorCode::Config, "cannot write " + path.string());
    }
    out << content;
}

} // namespace opuc
