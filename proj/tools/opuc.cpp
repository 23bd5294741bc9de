#include "opuc/asymptotics.hpp"
#include "opuc/errors.hpp"
#include "opuc/io.hpp"
#include "opuc/recursion.hpp"
#include "opuc/roots.hpp"
#include "opuc/szego.hpp"
#include "opuc/verify.hpp"
#include "opuc/zeros.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace opuc;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, numerical = 3 };

struct Common {
    std::string family;
    std::string out;
    std::string n_list;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

std::uint64_t resolve_seed(const Common& c)
{
    if (c.seed_given) {
        return c.seed;
    }
    if (const char* env = std::getenv("OPUC_SEED")) {
        try {
            std::size_t pos = 0;
            const auto v = std::stoull(env, &pos);
            if (pos == std::string(env).size()) {
                return v;
            }
        } catch (const std::exception&) {
        }
        raise(ErrorCode::Config, std::string("OPUC_SEED is not an unsigned integer: ") + env);
    }
    return 0;
}

std::vector<int> parse_ns(const std::string& text)
{
    std::vector<int> ns;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        // a..b or a..b..step
        const auto dots = item.find("..");
        try {
            if (dots == std::string::npos) {
                std::size_t pos = 0;
                ns.push_back(std::stoi(item, &pos));
                if (pos != item.size()) {
                    throw std::invalid_argument(item);
                }
            } else {
                const int first = std::stoi(item.substr(0, dots));
                std::string rest = item.substr(dots + 2);
                int step = 1;
                const auto dots2 = rest.find("..");
                if (dots2 != std::string::npos) {
                    step = std::stoi(rest.substr(dots2 + 2));
                    rest = rest.substr(0, dots2);
                }
                const int last = std::stoi(rest);
                if (step <= 0 || last < first) {
                    throw std::invalid_argument(item);
                }
                for (int n = first; n <= last; n += step) {
                    ns.push_back(n);
                }
            }
        } catch (const std::logic_error&) {
            raise(ErrorCode::Config, "bad --n entry \"" + item + "\"");
        }
    }
    if (ns.empty()) {
        raise(ErrorCode::Config, "--n is empty");
    }
    return ns;
}

int single_n(const Common& c)
{
    const auto ns = parse_ns(c.n_list);
    if (ns.size() != 1) {
        raise(ErrorCode::Config, "this command takes a single --n");
    }
    return ns[0];
}

CoefficientFamily family_of(const Common& c)
{
    if (c.family.empty()) {
        raise(ErrorCode::Config, "--family is required");
    }
    return load_family(c.family, resolve_seed(c));
}

fs::path out_dir(const Common& c)
{
    const fs::path dir = c.out.empty() ? fs::path(".") : fs::path(c.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        raise(ErrorCode::Config, "cannot create " + dir.string() + ": " + ec.message());
    }
    return dir;
}

std::string dump_json(const Json& j)
{
    std::ostringstream os;
    write_json(os, j);
    return os.str();
}

// ---------------------------------------------------------------- gen

int cmd_gen(const Common& c)
{
    const auto fam = family_of(c);
    const int N = single_n(c);
    if (N < 0) {
        raise(ErrorCode::Config, "--n must be nonnegative");
    }
    std::ostringstream os;
    write_coefficients_csv(os, fam, N);
    // a path ending in .csv names the file itself
    if (!c.out.empty() && fs::path(c.out).extension() == ".csv") {
        const fs::path p(c.out);
        if (p.has_parent_path()) {
            fs::create_directories(p.parent_path());
        }
        write_text_file(p, os.str());
    } else if (!c.out.empty()) {
        write_text_file(out_dir(c) / "coefficients.csv", os.str());
    } else {
        std::cout << os.str();
    }
    return ok;
}

// ---------------------------------------------------------------- poly

struct PolyArgs {
    bool reversed = false;
    bool orthonormal = false;
    std::vector<double> bounds;
};

int cmd_poly(const Common& c, const PolyArgs& a)
{
    const auto fam = family_of(c);
    const int n = single_n(c);
    if (n < 0) {
        raise(ErrorCode::Config, "--n must be nonnegative");
    }
    const auto dir = out_dir(c);
    const SzegoPair pair = monic_pair(fam, n);
    write_text_file(dir / ("phi_" + std::to_string(n) + ".json"), dump_json(poly_to_json(n, pair.phi)));
    if (a.reversed) {
        write_text_file(dir / ("phistar_" + std::to_string(n) + ".json"), dump_json(poly_to_json(n, pair.phistar)));
    }
    if (a.orthonormal) {
        write_text_file(dir / ("orthonormal_" + std::to_string(n) + ".json"),
                        dump_json(poly_to_json(n, orthonormal(fam, n))));
    }
    std::cout << "phi_" << n << ": degree " << pair.phi.degree() << ", kappa " << format_double(kappa(fam, n)) << "\n";
    if (!a.bounds.empty()) {
        if (a.bounds.size() != 2) {
            raise(ErrorCode::Config, "--bounds takes q,qprime");
        }
        BoundOptions bo;
        bo.throw_on_violation = false;
        const BoundReport br = check_bounds(fam, a.bounds[0], a.bounds[1], n, bo);
        std::ostringstream csv;
        write_bound_csv(csv, br);
        write_text_file(dir / ("bounds_" + std::to_string(n) + ".csv"), csv.str());
        write_text_file(dir / ("bounds_" + std::to_string(n) + ".json"), dump_json(bound_report_to_json(br)));
        std::cout << "bounds: worst ratio " << format_double(br.worst_ratio) << ", fitted rate "
                  << format_double(br.fitted_rate) << " (predicted " << format_double(br.predicted_rate) << ")\n";
        if (!br.holds()) {
            std::cerr << "opuc: a sampled bound exceeds its prediction\n";
            return failed;
        }
    }
    return ok;
}

// ---------------------------------------------------------------- zeros / classify

void write_plot(const fs::path& path, const ZeroReport& r)
{
    std::ostringstream os;
    os << "# zeros of Phi_" << r.n << ": re im modulus arg, one block per class\n";
    const std::pair<ZeroClass, const std::vector<Complex>*> blocks[] = {
        {ZeroClass::Interior, &r.interior}, {ZeroClass::Band, &r.band}, {ZeroClass::NevaiTotik, &r.nt}};
    bool first = true;
    for (const auto& [cls, pts] : blocks) {
        if (!first) {
            os << "\n\n";
        }
        first = false;
        os << "# " << to_string(cls) << "\n";
        for (const Complex& z : *pts) {
            os << format_double(z.real()) << ' ' << format_double(z.imag()) << ' ' << format_double(std::abs(z))
               << ' ' << format_double(std::arg(z)) << '\n';
        }
    }
    write_text_file(path, os.str());
}

ClassifyOptions classify_options(const SzegoApprox& approx, const DecayModel& model)
{
    ClassifyOptions co;
    const double inner = model.b * (1.0 + approx.options().margin);
    if (inner < co.nt_outer) {
        co.nt_candidates = nt_zero_candidates(approx, inner, co.nt_outer, co.scan).points;
    } else {
        co.nt_candidates = std::vector<Complex>{};
    }
    return co;
}

int cmd_zeros(const Common& c, bool plot)
{
    const auto fam = family_of(c);
    const int n = single_n(c);
    if (n < 1) {
        raise(ErrorCode::Config, "--n must be at least 1; a constant polynomial has no zeros");
    }
    const auto dir = out_dir(c);
    const std::string tag = std::to_string(n);
    std::optional<DecayModel> model;
    try {
        model = infer_model(fam);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ModelUnavailable) {
            throw;
        }
    }
    if (!model || model->size() == 0) {
        // no decay model: zeros only
        const RootSet rs = find_roots(monic_pair(fam, n).phi);
        std::ostringstream csv;
        write_roots_csv(csv, n, rs);
        write_text_file(dir / ("zeros_" + tag + ".csv"), csv.str());
        std::cout << n << " zeros, no decay model for classification\n";
        return ok;
    }
    const SzegoApprox approx(fam);
    const ZeroReport r = classify(approx, *model, n, classify_options(approx, *model));
    std::ostringstream csv;
    write_roots_csv(csv, n, r.zeros, &r.classes);
    write_text_file(dir / ("zeros_" + tag + ".csv"), csv.str());
    write_text_file(dir / ("classification_" + tag + ".json"), dump_json(report_to_json(r)));
    if (plot) {
        write_plot(dir / ("zeros_" + tag + ".dat"), r);
    }
    std::cout << r.zeros.roots.size() << " zeros: " << r.interior.size() << " interior, " << r.band.size()
              << " band, " << r.nt.size() << " nt\n";
    for (const auto& w : r.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    return ok;
}

int cmd_classify(const Common& c)
{
    const auto fam = family_of(c);
    const auto ns = parse_ns(c.n_list);
    for (int n : ns) {
        if (n < 1) {
            raise(ErrorCode::Config, "--n entries must be at least 1");
        }
    }
    const auto dir = out_dir(c);
    const DecayModel model = infer_model(fam);
    const SzegoApprox approx(fam);
    const ClassifyOptions co = classify_options(approx, model);
    std::vector<ZeroReport> reports(ns.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < ns.size(); ++k) {
        reports[k] = classify(approx, model, ns[k], co);
    }
    Json summary = Json::array();
    std::vector<ClockStats> stats;
    for (const auto& r : reports) {
        write_text_file(dir / ("classification_" + std::to_string(r.n) + ".json"), dump_json(report_to_json(r)));
        Json row = {{"n", r.n}, {"interior", r.interior.size()}, {"band", r.band.size()}, {"nt", r.nt.size()}};
        if (!r.band.empty()) {
            stats.push_back(clock_report(r));
            row["clock"] = clock_to_json(stats.back());
        }
        summary.push_back(row);
        std::cout << "n=" << r.n << ": " << r.interior.size() << " interior, " << r.band.size() << " band, "
                  << r.nt.size() << " nt\n";
    }
    Json j = {{"family", fam.label()}, {"runs", summary}};
    if (stats.size() >= 2) {
        j["spacing_exponent"] = spacing_exponent(stats);
        std::cout << "spacing exponent " << format_double(j["spacing_exponent"].get<double>()) << "\n";
    }
    write_text_file(dir / "classify_summary.json", dump_json(j));
    return ok;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string suite;
    int m = 8;
    int trials = 100;
};

int cmd_verify(const Common& c, const VerifyArgs& a)
{
    VerifyConfig cfg;
    cfg.seed = resolve_seed(c);
    cfg.m = a.m;
    cfg.trials = a.trials;
    if (a.m < 0 || a.trials < 1) {
        raise(ErrorCode::Config, "--m must be >= 0 and --trials >= 1");
    }
    if (!c.family.empty()) {
        cfg.family = load_family(c.family, cfg.seed);
    }
    if (!c.n_list.empty()) {
        cfg.ns = parse_ns(c.n_list);
    }
    std::vector<std::string> names;
    if (a.suite == "all") {
        names = suite_names();
    } else {
        names.push_back(a.suite);
    }
    const auto dir = out_dir(c);
    bool all = true;
    for (const auto& name : names) {
        const auto outcomes = run_suite(name, cfg);
        write_text_file(dir / ("verify_" + name + ".json"), dump_json(outcomes_to_json(name, outcomes)));
        for (const auto& o : outcomes) {
            std::cout << (o.pass ? "PASS " : "FAIL ") << name << " " << o.id << "\n";
            all = all && o.pass;
        }
    }
    return all ? ok : failed;
}

// ---------------------------------------------------------------- export-plot

struct PlotArgs {
    int radii = 40;
    int angles = 256;
};

int cmd_export_plot(const Common& c, const PlotArgs& a)
{
    const auto fam = family_of(c);
    const auto ns = parse_ns(c.n_list);
    const auto dir = out_dir(c);
    const DecayModel model = infer_model(fam);
    const SzegoApprox approx(fam);
    const ClassifyOptions co = classify_options(approx, model);
    for (int n : ns) {
        if (n < 1) {
            raise(ErrorCode::Config, "--n entries must be at least 1");
        }
        write_plot(dir / ("zeros_" + std::to_string(n) + ".dat"), classify(approx, model, n, co));
    }
    const double r_min = model.b * (1.0 + approx.options().margin) * 1.001;
    std::ostringstream grid;
    write_outer_limit_grid(grid, approx, r_min, 0.995, a.radii, a.angles);
    write_text_file(dir / "outer_limit.csv", grid.str());

    const Delta1Fit fit = estimate_delta1(approx, model);
    const AnnulusSpec ann = fit.annulus();
    const auto pts = annulus_grid(0.4, 0.7, 5, 4);
    std::vector<CriticalDecomposition> rows;
    for (int n : ns) {
        for (const Complex& z : pts) {
            rows.push_back(critical_decomposition(approx, model, ann, n, z));
        }
    }
    std::ostringstream dec;
    write_decomposition_csv(dec, rows);
    write_text_file(dir / "decomposition.csv", dec.str());
    std::cout << "wrote " << ns.size() << " zero plots, outer_limit.csv, decomposition.csv to " << dir.string()
              << "\n";
    return ok;
}

void add_common(CLI::App* app, Common& c, bool family_required)
{
    auto* f = app->add_option("--family", c.family, "family spec JSON");
    if (family_required) {
        f->required();
    }
    app->add_option("--out", c.out, "output directory");
    app->add_option("--seed", c.seed, "seed for remainders and random draws (default $OPUC_SEED or 0)")
        ->each([&c](const std::string&) { c.seed_given = true; });
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"OPUC with exponentially decaying Verblunsky coefficients"};
    app.require_subcommand(1);

    Common c;
    PolyArgs pa;
    VerifyArgs va;
    PlotArgs pl;
    bool plot = false;

    auto* gen = app.add_subcommand("gen", "write alpha_n for n < N as CSV");
    add_common(gen, c, true);
    gen->add_option("--n", c.n_list, "number of coefficients")->required();

    auto* poly = app.add_subcommand("poly", "write Phi_n as JSON");
    add_common(poly, c, true);
    poly->add_option("--n", c.n_list, "degree")->required();
    poly->add_flag("--reversed", pa.reversed, "also write Phi_n^*");
    poly->add_flag("--orthonormal", pa.orthonormal, "also write kappa_n Phi_n");
    poly->add_option("--bounds", pa.bounds, "q,qprime: sample the bounds up to n")->delimiter(',');

    auto* zeros = app.add_subcommand("zeros", "zeros of Phi_n with classes");
    add_common(zeros, c, true);
    zeros->add_option("--n", c.n_list, "degree")->required();
    zeros->add_flag("--plot", plot, "also write a gnuplot point file");

    auto* cls = app.add_subcommand("classify", "classification reports over a list of n");
    add_common(cls, c, true);
    cls->add_option("--n", c.n_list, "degrees, e.g. 50,100,200 or 20..120")->required();

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    add_common(ver, c, false);
    std::string suites = "all";
    for (const auto& s : suite_names()) {
        suites += ", " + s;
    }
    ver->add_option("suite", va.suite, suites)->required();
    ver->add_option("--n", c.n_list, "override the suite's degrees");
    ver->add_option("--m", va.m, "largest determinant size for sec6");
    ver->add_option("--trials", va.trials, "random trials for sec6");

    auto* exp = app.add_subcommand("export-plot", "point sets for the zero and outer-limit plots");
    add_common(exp, c, true);
    exp->add_option("--n", c.n_list, "degrees")->required();
    exp->add_option("--radii", pl.radii, "outer-limit grid radii");
    exp->add_option("--angles", pl.angles, "outer-limit grid angles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        if (*gen) {
            return cmd_gen(c);
        }
        if (*poly) {
            return cmd_poly(c, pa);
        }
        if (*zeros) {
            return cmd_zeros(c, plot);
        }
        if (*cls) {
            return cmd_classify(c);
        }
        if (*ver) {
            return cmd_verify(c, va);
        }
        if (*exp) {
            return cmd_export_plot(c, pl);
        }
    } catch (const Error& e) {
        std::cerr << "opuc: " << e.what() << "\n";
        const bool config = e.code() == ErrorCode::Config || e.code() == ErrorCode::InvalidArgument;
        return config ? usage : numerical;
    } catch (const std::exception& e) {
        std::cerr << "opuc: " << e.what() << "\n";
        return numerical;
    }
    return usage;
}
