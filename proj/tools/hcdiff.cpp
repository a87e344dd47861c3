// hcdiff: spectral differentiation of noisy Legendre data on hyperbolic crosses.
//
//   hcdiff coeffs     --function polynomial --K 8 --out poly.grid
//   hcdiff diff       --in poly.grid --r1 1 --r2 1 --delta 1e-3 --mu 5 --out d.grid
//   hcdiff cross      --n 100 --gamma 1.5 --out cross.txt
//   hcdiff experiment --config configs/default.ini --out-csv r.csv --out-json r.json
//   hcdiff radius     --N 8,16,32,64 --out-json radius.json
//
// Exit codes: 0 ok, 1 internal, 2 input, 3 admissibility, 4 config, 5 infeasible.

#include "hcdiff/config.hpp"
#include "hcdiff/error.hpp"
#include "hcdiff/harness.hpp"
#include "hcdiff/io.hpp"
#include "hcdiff/quadrature.hpp"
#include "hcdiff/registry.hpp"
#include "hcdiff/report.hpp"
#include "hcdiff/truncation.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <iostream>
#include <sstream>

using namespace hcdiff;

namespace
{

enum Exit
{
    ok = 0,
    internal = 1,
    input = 2,
    admissibility = 3,
    config = 4,
    infeasible = 5,
};

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

void emit(const std::string& path, const std::string& contents)
{
    if (path.empty() || path == "-")
        std::cout << contents;
    else
        atomic_write(path, contents);
}

struct CoeffsArgs
{
    std::string function;
    int K = 16;
    int m = 0;
    int r1 = 0;
    int r2 = 0;
    double zero_tol = 1e-13;
    std::string out;
};

int cmd_coeffs(const CoeffsArgs& a)
{
    const auto fn = find_function(a.function);
    if (!fn)
    {
        std::ostringstream ids;
        for (const auto& entry : function_registry())
            ids << ' ' << entry.name;
        throw ParameterError("unknown function id '" + a.function + "' (available:" + ids.str() + ")");
    }
    if (a.K < 0)
        throw ParameterError("--K must be >= 0");
    if (a.r1 < 0 || a.r2 < 0)
        throw ParameterError("--r1 and --r2 must be >= 0");
    const int order = a.m > 0 ? a.m : default_quadrature_order(a.K);
    const BivariateFunction f = (a.r1 || a.r2) ? fn->derivative(a.r1, a.r2) : fn->f;

    CoeffGrid grid;
    for (const auto& [idx, v] : compute_coeff_grid(f, a.K, order))
        if (std::abs(v) > a.zero_tol)
            grid.set(idx.first, idx.second, v);
    emit(a.out, coeff_grid_to_string(grid));
    return ok;
}

struct DiffArgs
{
    std::string in;
    std::string reference;
    int r1 = 1;
    int r2 = 1;
    double delta = 1e-3;
    std::string p = "2";
    double s = 2.0;
    double mu = 4.0;
    std::string metric = "l2";
    std::optional<double> gamma;
    std::uint64_t seed = 0;
    std::string noise = "sphere";
    std::optional<int> single_k;
    std::optional<int> single_j;
    int support = -1;
    int resolution = kDefaultSupResolution;
    std::string out;
    std::string out_json;
};

int cmd_diff(const DiffArgs& a)
{
    const CoeffGrid c = load_coeff_grid(a.in);
    const MetricSelection metric = parse_metric_selection(a.metric);
    const auto mode = parse_noise_mode(a.noise);
    if (!mode)
        throw ParameterError("unknown noise mode '" + a.noise + "'");
    if (*mode == NoiseMode::adversarial_witness)
        throw ParameterError("witness noise needs a witness pair; use the radius command");
    if (a.single_k.has_value() != a.single_j.has_value())
        throw ParameterError("--single-k and --single-j go together");

    SelectionInput sel_in;
    sel_in.delta = a.delta;
    sel_in.p = parse_double(a.p);
    sel_in.cls = ClassParams{a.s, a.mu};
    sel_in.r1 = a.r1;
    sel_in.r2 = a.r2;
    sel_in.metric = metric == MetricSelection::c ? Metric::c : Metric::l2;
    sel_in.gamma_override = a.gamma;
    if (metric == MetricSelection::both)
    {
        SelectionInput c_in = sel_in;
        c_in.metric = Metric::c;
        check_admissibility(c_in);
    }
    const Selection sel = select_parameters(sel_in);

    NoiseSpec spec;
    spec.p = sel_in.p;
    spec.delta = a.delta;
    spec.mode = *mode;
    spec.seed = a.seed;
    spec.support = a.support >= 0 ? a.support : std::max({c.max_k(), c.max_j(), 0});
    if (a.single_k)
        spec.single_index = IndexPair{*a.single_k, *a.single_j};
    const Perturbation data = perturb(c, spec);

    const MethodParams params{sel.n, sel.gamma, a.r1, a.r2};
    const CoeffGrid derivative = apply_method(data.observed, params);
    const HyperbolicCross cross = build_cross(sel.n, sel.gamma, a.r1, a.r2);

    std::ostringstream echo;
    echo << "diff in=" << a.in << " r1=" << a.r1 << " r2=" << a.r2 << " delta=" << format_double(a.delta)
         << " p=" << format_double(sel_in.p) << " s=" << format_double(a.s) << " mu=" << format_double(a.mu)
         << " metric=" << a.metric << " gamma=" << (a.gamma ? format_double(*a.gamma) : "auto")
         << " seed=" << a.seed << " noise=" << to_string(*mode) << " support=" << spec.support;
    RunManifest manifest{"diff", echo.str(), std::nullopt, {}};
    manifest.outputs = {a.out.empty() ? "-" : a.out, a.out_json};

    nlohmann::json side{
        {"manifest", manifest.to_json()},
        {"n", sel.n},
        {"gamma", sel.gamma},
        {"case", sel.case_label},
        {"cross_card", cross.cardinality()},
        {"noise_norm", lp_norm(data.noise, sel_in.p)},
        {"output_entries", derivative.size()},
    };
    if (!a.reference.empty())
    {
        const CoeffGrid diff = load_coeff_grid(a.reference) - derivative;
        side["error_l2"] = parseval_l2_norm(diff);
        side["error_c"] = sup_norm_on_grid(diff, a.resolution);
    }

    emit(a.out, coeff_grid_to_string(derivative));
    if (!a.out_json.empty())
        emit(a.out_json, side.dump(2) + "\n");
    else
        std::cerr << "n = " << sel.n << ", gamma = " << sel.gamma << " (" << sel.case_label << "), "
                  << cross.cardinality() << " indices\n";
    return ok;
}

struct CrossArgs
{
    double n = 16.0;
    double gamma = 1.0;
    int r1 = 1;
    int r2 = 1;
    std::string out;
};

int cmd_cross(const CrossArgs& a)
{
    emit(a.out, cross_to_string(build_cross(a.n, a.gamma, a.r1, a.r2)));
    return ok;
}

struct ExperimentArgs
{
    std::string config;
    std::string out_csv;
    std::string out_json;
    std::string out_svg;
    bool timestamp = false;
};

int cmd_experiment(const ExperimentArgs& a)
{
    const ExperimentConfig cfg = load_experiment_config(a.config);
    const ExperimentResult result = run_convergence_study(cfg);
    RunManifest manifest{
        "experiment", echo_config(cfg), a.timestamp ? std::optional(utc_timestamp()) : std::nullopt, {}};
    for (const std::string& path : {a.out_csv, a.out_json, a.out_svg})
        if (!path.empty())
            manifest.outputs.push_back(path);

    if (!a.out_csv.empty())
        emit(a.out_csv, experiment_csv(result));
    if (!a.out_json.empty())
        emit(a.out_json, experiment_json(result, manifest).dump(2) + "\n");
    if (!a.out_svg.empty())
        emit(a.out_svg, experiment_svg(result, manifest));
    if (a.out_csv.empty() && a.out_json.empty() && a.out_svg.empty())
        std::cout << experiment_csv(result);

    auto show = [](const char* name, const std::optional<RateFit>& fit, const std::optional<double>& theory) {
        std::cerr << name << ": fitted " << (fit ? std::to_string(fit->slope) : std::string("n/a"))
                  << ", theory " << (theory ? std::to_string(*theory) : std::string("n/a")) << '\n';
    };
    show("L2 exponent", result.fit_l2, result.theoretical_l2);
    show("C exponent ", result.fit_c, result.theoretical_c);
    return ok;
}

struct RadiusArgs
{
    std::vector<int> N{8, 16, 32, 64};
    double s = 2.0;
    double mu = 6.0;
    int r1 = 2;
    int r2 = 1;
    std::string p = "2";
    int resolution = kDefaultSupResolution;
    std::string out_json;
    bool timestamp = false;
};

int cmd_radius(const RadiusArgs& a)
{
    RadiusConfig cfg;
    cfg.N_values = a.N;
    cfg.cls = ClassParams{a.s, a.mu};
    cfg.r1 = a.r1;
    cfg.r2 = a.r2;
    cfg.p = parse_double(a.p);
    cfg.sup_resolution = a.resolution;
    const RadiusReport report = run_radius_study(cfg);

    std::ostringstream echo;
    echo << "radius N=";
    for (std::size_t i = 0; i < a.N.size(); ++i)
        echo << (i ? "," : "") << a.N[i];
    echo << " s=" << format_double(a.s) << " mu=" << format_double(a.mu) << " r1=" << a.r1 << " r2=" << a.r2
         << " p=" << format_double(cfg.p) << " resolution=" << a.resolution;
    RunManifest manifest{
        "radius", echo.str(), a.timestamp ? std::optional(utc_timestamp()) : std::nullopt, {}};
    manifest.outputs = {a.out_json.empty() ? "-" : a.out_json};
    emit(a.out_json.empty() ? "-" : a.out_json, radius_json(report, manifest).dump(2) + "\n");
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spectral mixed-derivative estimation from noisy Legendre coefficients"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    CoeffsArgs coeffs;
    auto* c = app.add_subcommand("coeffs", "Legendre coefficients of a registered function");
    c->add_option("--function,-f", coeffs.function, "Function id")->required();
    c->add_option("--K", coeffs.K, "Degree cutoff per axis")->capture_default_str();
    c->add_option("--m", coeffs.m, "Quadrature order (default K + 10)");
    c->add_option("--r1", coeffs.r1, "Expand the exact derivative of this order in t instead");
    c->add_option("--r2", coeffs.r2, "Expand the exact derivative of this order in tau instead");
    c->add_option("--zero-tol", coeffs.zero_tol, "Drop coefficients at or below this magnitude")
        ->capture_default_str();
    c->add_option("--out,-o", coeffs.out, "Output grid file (default stdout)");

    DiffArgs diff;
    auto* d = app.add_subcommand("diff", "Estimate a mixed derivative from a coefficient grid");
    d->add_option("--in,-i", diff.in, "Input coefficient grid")->required();
    d->add_option("--reference", diff.reference, "Exact derivative grid for error reporting");
    d->add_option("--r1", diff.r1)->capture_default_str();
    d->add_option("--r2", diff.r2)->capture_default_str();
    d->add_option("--delta", diff.delta, "Noise level in (0, 1)")->capture_default_str();
    d->add_option("--p", diff.p, "Noise norm exponent (number or inf)")->capture_default_str();
    d->add_option("--s", diff.s)->capture_default_str();
    d->add_option("--mu", diff.mu)->capture_default_str();
    d->add_option("--metric", diff.metric, "l2, c or both")->capture_default_str();
    d->add_option("--gamma", diff.gamma, "Force the cross shape");
    d->add_option("--seed", diff.seed)->capture_default_str();
    d->add_option("--noise", diff.noise, "sphere, single or off")->capture_default_str();
    d->add_option("--single-k", diff.single_k, "Row of the single-coefficient noise");
    d->add_option("--single-j", diff.single_j, "Column of the single-coefficient noise");
    d->add_option("--support", diff.support, "Noise support (default: grid extent)");
    d->add_option("--resolution", diff.resolution, "Sup-norm grid size")->capture_default_str();
    d->add_option("--out,-o", diff.out, "Output derivative grid (default stdout)");
    d->add_option("--out-json", diff.out_json, "JSON sidecar");

    CrossArgs cross;
    auto* x = app.add_subcommand("cross", "List the indices of a hyperbolic cross");
    x->add_option("--n", cross.n)->required();
    x->add_option("--gamma", cross.gamma)->capture_default_str();
    x->add_option("--r1", cross.r1)->capture_default_str();
    x->add_option("--r2", cross.r2)->capture_default_str();
    x->add_option("--out,-o", cross.out, "Output file (default stdout)");

    ExperimentArgs experiment;
    auto* e = app.add_subcommand("experiment", "Convergence sweep over delta");
    e->add_option("--config", experiment.config, "Experiment config file")->required();
    e->add_option("--out-csv", experiment.out_csv);
    e->add_option("--out-json", experiment.out_json);
    e->add_option("--out-svg", experiment.out_svg);
    e->add_flag("--timestamp", experiment.timestamp, "Record the wall-clock time in the manifest");

    RadiusArgs radius;
    auto* r = app.add_subcommand("radius", "Lower-bound witnesses against the method's error");
    r->add_option("--N", radius.N, "Budgets, comma separated")->delimiter(',')->capture_default_str();
    r->add_option("--s", radius.s)->capture_default_str();
    r->add_option("--mu", radius.mu)->capture_default_str();
    r->add_option("--r1", radius.r1)->capture_default_str();
    r->add_option("--r2", radius.r2)->capture_default_str();
    r->add_option("--p", radius.p)->capture_default_str();
    r->add_option("--resolution", radius.resolution)->capture_default_str();
    r->add_option("--out-json", radius.out_json, "Report file (default stdout)");
    r->add_flag("--timestamp", radius.timestamp);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& err)
    {
        return app.exit(err);
    }
    catch (const CLI::CallForAllHelp& err)
    {
        return app.exit(err);
    }
    catch (const CLI::CallForVersion& err)
    {
        return app.exit(err);
    }
    catch (const CLI::ParseError& err)
    {
        app.exit(err);
        return input;
    }

    try
    {
        if (*c)
            return cmd_coeffs(coeffs);
        if (*d)
            return cmd_diff(diff);
        if (*x)
            return cmd_cross(cross);
        if (*e)
            return cmd_experiment(experiment);
        if (*r)
            return cmd_radius(radius);
    }
    catch (const ConfigError& err)
    {
        std::cerr << "error: " << err.what() << '\n';
        return config;
    }
    catch (const AdmissibilityError& err)
    {
        std::cerr << "error: " << err.what() << '\n';
        return admissibility;
    }
    catch (const InfeasibilityError& err)
    {
        std::cerr << "error: " << err.what() << '\n';
        return infeasible;
    }
    catch (const ParameterError& err)
    {
        std::cerr << "error: " << err.what() << '\n';
        return input;
    }
    catch (const DomainError& err)
    {
        std::cerr << "error: " << err.what() << '\n';
        return input;
    }
    catch (const std::exception& err)
    {
        std::cerr << "internal error: " << err.what() << '\n';
        return internal;
    }
    return internal;
}
