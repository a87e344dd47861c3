#include "hcdiff/harness.hpp"

#include "hcdiff/error.hpp"
#include "hcdiff/legendre.hpp"
#include "hcdiff/quadrature.hpp"
#include "hcdiff/registry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

namespace hcdiff
{

CoeffGrid synthesize_class_function(const ClassParams& cls, const SyntheticProfile& profile, std::uint64_t seed)
{
    cls.validate();
    if (!(profile.epsilon > 0.0))
        throw ParameterError("synthetic profile requires epsilon > 0");
    if (profile.k_ref < 0)
        throw ParameterError("synthetic profile requires k_ref >= 0");

    CoeffGrid c;
    if (profile.single_index)
    {
        const auto [k, j] = *profile.single_index;
        const double weight = std::max(1, k) * static_cast<double>(std::max(1, j));
        c.set(k, j, std::pow(weight, -cls.mu));
        return c;
    }

    const double decay = -cls.mu - 1.0 / cls.s - profile.epsilon;
    const int side = profile.k_ref + 1;
    for (int k = 0; k < side; ++k)
        for (int j = 0; j < side; ++j)
        {
            const auto counter = static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(side) +
                                 static_cast<std::uint64_t>(j);
            const double sign = (splitmix64(seed, counter) >> 63) ? -1.0 : 1.0;
            const double weight = std::max(1, k) * static_cast<double>(std::max(1, j));
            c.set(k, j, sign * std::pow(weight, decay));
        }
    return (1.0 / class_norm(c, cls)) * c;
}

RateFit fit_rate(std::span<const std::pair<double, double>> points)
{
    if (points.size() < 2)
        throw ParameterError("rate fit needs at least two points");
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const auto [x, y] = points[static_cast<std::size_t>(i)];
        if (!(x > 0.0) || !(y > 0.0))
            throw ParameterError("rate fit needs strictly positive values");
        design(i, 0) = std::log(x);
        design(i, 1) = 1.0;
        rhs(i) = std::log(y);
    }
    const Eigen::Vector2d sol = design.colPivHouseholderQr().solve(rhs);
    RateFit fit;
    fit.slope = sol(0);
    fit.intercept = sol(1);
    fit.residual = std::sqrt((design * sol - rhs).squaredNorm() / static_cast<double>(n));
    fit.points_used = points.size();
    return fit;
}

std::string_view to_string(MetricSelection m)
{
    switch (m)
    {
    case MetricSelection::l2:
        return "l2";
    case MetricSelection::c:
        return "c";
    case MetricSelection::both:
        return "both";
    }
    return "unknown";
}

std::vector<double> ExperimentConfig::deltas() const
{
    std::vector<double> out;
    if (delta_count < 1)
        return out;
    if (delta_count == 1)
        return {delta_start};
    const double ratio = std::log(delta_stop / delta_start);
    for (int i = 0; i < delta_count; ++i)
        out.push_back(delta_start * std::exp(ratio * i / (delta_count - 1)));
    out.back() = delta_stop;
    return out;
}

std::vector<std::string> ExperimentConfig::problems() const
{
    std::vector<std::string> bad;
    if (!(cls.s >= 1.0) || !std::isfinite(cls.s))
        bad.push_back("class.s: must satisfy 1 <= s < inf");
    if (!(cls.mu > 0.0) || !std::isfinite(cls.mu))
        bad.push_back("class.mu: must be positive");
    if (r2 < 1)
        bad.push_back("method.r2: must be >= 1");
    if (r1 < r2)
        bad.push_back("method.r1: must be >= r2");
    if (!(p >= 1.0))
        bad.push_back("method.p: must be >= 1 or inf");
    if (gamma && !(*gamma >= 1.0))
        bad.push_back("method.gamma: must be >= 1");
    if (!(delta_start > 0.0 && delta_start < 1.0))
        bad.push_back("sweep.delta_start: must lie in (0, 1)");
    if (!(delta_stop > 0.0 && delta_stop < 1.0))
        bad.push_back("sweep.delta_stop: must lie in (0, 1)");
    if (delta_count < 1)
        bad.push_back("sweep.count: must be >= 1");
    else if (delta_count > 1 && !(delta_stop < delta_start))
        bad.push_back("sweep.delta_stop: must be smaller than delta_start (sweep is decreasing)");
    if (noise_mode == NoiseMode::adversarial_witness)
        bad.push_back("noise.mode: witness noise is only available in the radius study");
    if (realizations < 1)
        bad.push_back("noise.realizations: must be >= 1");
    if (noise_support < 0)
        bad.push_back("noise.support: must be >= 0");
    const auto ids = function_ids();
    if (std::find(ids.begin(), ids.end(), function_id) == ids.end())
        bad.push_back("function.id: unknown function '" + function_id + "'");
    if (!(epsilon > 0.0))
        bad.push_back("function.epsilon: must be > 0");
    if (k_ref < 1)
        bad.push_back("function.k_ref: must be >= 1");
    if (quadrature_order != 0 && quadrature_order < k_ref + 2)
        bad.push_back("function.quadrature_order: must be 0 (auto) or >= k_ref + 2");
    if (sup_resolution < 2)
        bad.push_back("output.sup_resolution: must be >= 2");
    return bad;
}

std::optional<RateFit> fit_records(const std::vector<ExperimentRecord>& records, Metric metric)
{
    if (records.size() < 4)
        return std::nullopt;
    std::vector<std::pair<double, double>> points;
    for (const auto& r : records)
    {
        const double e = metric == Metric::l2 ? r.error_l2 : r.error_c;
        if (!(e > 0.0))
            return std::nullopt;
        points.emplace_back(r.delta, e);
    }
    RateFit fit = fit_rate(points);
    if (fit.residual > 0.1 && points.size() >= 5)
        fit = fit_rate(std::span(points).subspan(2));
    return fit;
}

namespace
{
SelectionInput selection_input(const ExperimentConfig& cfg, double delta, Metric metric)
{
    SelectionInput in;
    in.delta = delta;
    in.p = cfg.p;
    in.cls = cfg.cls;
    in.r1 = cfg.r1;
    in.r2 = cfg.r2;
    in.metric = metric;
    in.gamma_override = cfg.gamma;
    return in;
}

std::optional<double> exponent_if_admissible(const ExperimentConfig& cfg, Metric metric)
{
    try
    {
        return theoretical_error_exponent(selection_input(cfg, cfg.delta_start, metric));
    }
    catch (const AdmissibilityError&)
    {
        return std::nullopt;
    }
}

CoeffGrid source_grid(const ExperimentConfig& cfg, std::uint64_t seed)
{
    if (cfg.function_id == "synthetic")
        return synthesize_class_function(cfg.cls, SyntheticProfile{cfg.epsilon, cfg.k_ref, std::nullopt}, seed);
    const auto fn = find_function(cfg.function_id);
    const int order = cfg.quadrature_order > 0 ? cfg.quadrature_order : default_quadrature_order(cfg.k_ref);
    return compute_coeff_grid(fn->f, cfg.k_ref, order);
}

// Entries of c with both indices <= limit.
CoeffGrid window(const CoeffGrid& c, int limit)
{
    CoeffGrid out;
    for (const auto& [idx, v] : c)
        if (idx.first <= limit && idx.second <= limit)
            out.set(idx.first, idx.second, v);
    return out;
}

// Error of an approximate derivative against a dense reference, in L2 and
// on the Chebyshev tensor grid. ref_values = V ref W^T is precomputed.
struct ErrorMeter
{
    Eigen::MatrixXd ref;
    Eigen::MatrixXd ref_values;
    Eigen::MatrixXd v_t;
    Eigen::MatrixXd v_tau;

    ErrorMeter(Eigen::MatrixXd reference, int resolution)
        : ref(std::move(reference))
    {
        const Eigen::VectorXd x = chebyshev_points(resolution);
        v_t = phi_matrix<double>(x, static_cast<int>(std::max<Eigen::Index>(ref.rows(), 1)) - 1);
        v_tau = phi_matrix<double>(x, static_cast<int>(std::max<Eigen::Index>(ref.cols(), 1)) - 1);
        if (ref.rows() == 0 || ref.cols() == 0)
            ref_values = Eigen::MatrixXd::Zero(resolution, resolution);
        else
            ref_values = v_t * ref * v_tau.transpose();
    }

    std::pair<double, double> measure(const CoeffGrid& approx) const
    {
        const int rows = std::max<int>(approx.max_k() + 1, 0);
        const int cols = std::max<int>(approx.max_j() + 1, 0);
        if (rows > ref.rows() || cols > ref.cols())
            throw InternalError("approximation exceeds the reference grid");

        double l2_sq = ref.squaredNorm();
        for (const auto& [idx, v] : approx)
        {
            const double r = ref(idx.first, idx.second);
            l2_sq += (r - v) * (r - v) - r * r;
        }
        if (approx.empty())
            return {std::sqrt(std::max(l2_sq, 0.0)), ref_values.cwiseAbs().maxCoeff()};

        const Eigen::MatrixXd a = approx.to_dense(rows, cols);
        const Eigen::MatrixXd a_values = v_t.leftCols(rows) * a * v_tau.leftCols(cols).transpose();
        return {std::sqrt(std::max(l2_sq, 0.0)), (ref_values - a_values).cwiseAbs().maxCoeff()};
    }
};
} // namespace

ExperimentResult run_convergence_study(const ExperimentConfig& cfg)
{
    if (auto bad = cfg.problems(); !bad.empty())
        throw ConfigError(std::move(bad));

    ExperimentResult result;
    result.config = cfg;
    const Metric selection_metric = cfg.metric == MetricSelection::c ? Metric::c : Metric::l2;
    const std::vector<double> deltas = cfg.deltas();

    struct Planned
    {
        Selection sel;
        HyperbolicCross cross;
    };
    std::vector<Planned> plan;
    int extent = 0;
    for (double delta : deltas)
    {
        Selection sel = select_parameters(selection_input(cfg, delta, selection_metric));
        HyperbolicCross cross = build_cross(sel.n, sel.gamma, cfg.r1, cfg.r2);
        extent = std::max({extent, cross.max_k(), cross.max_j()});
        plan.push_back({std::move(sel), std::move(cross)});
    }
    if (cfg.k_ref < extent + 2)
        throw ConfigError({"function.k_ref: must be >= largest cross extent + 2 = " + std::to_string(extent + 2)});
    result.noise_support = cfg.noise_support > 0 ? cfg.noise_support : extent + 2;

    // A realization is one seed: the synthetic function's signs and the noise
    // both come from it. Registry functions are the same in every realization.
    struct Source
    {
        ErrorMeter meter;
        CoeffGrid observed_window;
    };
    std::vector<Source> sources;
    const int distinct = cfg.function_id == "synthetic" ? cfg.realizations : 1;
    for (int r = 0; r < distinct; ++r)
    {
        const CoeffGrid full = source_grid(cfg, cfg.seed + static_cast<std::uint64_t>(r));
        const Eigen::MatrixXd full_dense = full.to_dense(cfg.k_ref + 1, cfg.k_ref + 1);
        sources.push_back({ErrorMeter(mixed_derivative_dense(full_dense, cfg.r1, cfg.r2), cfg.sup_resolution),
                           window(full, std::max(result.noise_support, extent))});
    }

    for (std::size_t i = 0; i < deltas.size(); ++i)
    {
        const auto start = std::chrono::steady_clock::now();
        ExperimentRecord rec;
        rec.delta = deltas[i];
        rec.n = plan[i].sel.n;
        rec.gamma = plan[i].sel.gamma;
        rec.case_label = plan[i].sel.case_label;
        rec.cross_cardinality = plan[i].cross.cardinality();

        const MethodParams params{rec.n, rec.gamma, cfg.r1, cfg.r2};
        for (int r = 0; r < cfg.realizations; ++r)
        {
            NoiseSpec spec;
            spec.p = cfg.p;
            spec.delta = rec.delta;
            spec.mode = cfg.noise_mode;
            spec.seed = cfg.seed + i + static_cast<std::uint64_t>(r) * deltas.size();
            spec.support = result.noise_support;
            const Source& src = sources[static_cast<std::size_t>(r) % sources.size()];
            const Perturbation data = perturb(src.observed_window, spec);
            const auto [e_l2, e_c] = src.meter.measure(apply_method(data.observed, params));
            rec.error_l2 += e_l2;
            rec.error_c += e_c;
            rec.noise_norm += lp_norm(data.noise, cfg.p);
        }
        rec.error_l2 /= cfg.realizations;
        rec.error_c /= cfg.realizations;
        rec.noise_norm /= cfg.realizations;
        if (cfg.timing)
            rec.wall_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        result.records.push_back(std::move(rec));
    }

    result.fit_l2 = fit_records(result.records, Metric::l2);
    result.fit_c = fit_records(result.records, Metric::c);
    result.theoretical_l2 = exponent_if_admissible(cfg, Metric::l2);
    result.theoretical_c = exponent_if_admissible(cfg, Metric::c);
    return result;
}

namespace
{
// Largest n <= n_max whose cross has at most N indices.
double largest_n_with_budget(double n_max, double gamma, int r1, int r2, int N)
{
    if (build_cross(n_max, gamma, r1, r2).cardinality() <= static_cast<std::size_t>(N))
        return n_max;
    double lo = 0.0;
    double hi = n_max;
    for (int iter = 0; iter < 200 && hi - lo > 1e-12 * n_max; ++iter)
    {
        const double mid = 0.5 * (lo + hi);
        if (build_cross(mid, gamma, r1, r2).cardinality() <= static_cast<std::size_t>(N))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}
} // namespace

RadiusReport run_radius_study(const RadiusConfig& cfg)
{
    cfg.cls.validate();
    if (cfg.N_values.empty())
        throw ParameterError("radius study needs at least one N");
    for (int N : cfg.N_values)
        if (N < 4)
            throw ParameterError("radius study needs N >= 4 (got " + std::to_string(N) + ")");
    if (cfg.r2 < 1 || cfg.r1 < cfg.r2)
        throw ParameterError("radius study requires r1 >= r2 >= 1");

    RadiusReport report;
    report.config = cfg;
    report.constants = witness_constants(cfg.r1, cfg.r2, cfg.cls);
    const double inv_s = 1.0 / cfg.cls.s;
    report.theoretical_exponent_c = -cfg.cls.mu + 2.0 * cfg.r1 - inv_s + 1.5;
    report.theoretical_exponent_l2 = -cfg.cls.mu + 2.0 * cfg.r1 - inv_s + 0.5;

    const Eigen::VectorXd x = chebyshev_points(cfg.sup_resolution);
    auto sup_of = [&x](const CoeffGrid& g) {
        return g.empty() ? 0.0 : synth_tensor(g, x, x).cwiseAbs().maxCoeff();
    };

    report.lower_below_method = true;
    for (int N : cfg.N_values)
    {
        RadiusRecord rec;
        rec.N = N;
        rec.delta = delta_for_N(N, cfg.p, cfg.cls, cfg.r2);

        SelectionInput in;
        in.delta = rec.delta;
        in.p = cfg.p;
        in.cls = cfg.cls;
        in.r1 = cfg.r1;
        in.r2 = cfg.r2;
        in.metric = Metric::l2;
        const Selection sel = select_parameters(in);
        rec.n_selected = sel.n;
        rec.gamma = sel.gamma;
        rec.n_used = largest_n_with_budget(sel.n, sel.gamma, cfg.r1, cfg.r2, N);
        const HyperbolicCross cross = build_cross(rec.n_used, rec.gamma, cfg.r1, cfg.r2);
        rec.cross_cardinality = cross.cardinality();

        const std::set<IndexPair> excluded(cross.indices().begin(), cross.indices().end());
        const WitnessPair w = build_witness_pair(N, cfg.r1, cfg.r2, cfg.cls, excluded);
        rec.selected_k = w.selected_k();
        rec.witness_distance = witness_lp_distance(w, cfg.p);
        rec.check_c = verify_lower_bound_C(w);
        rec.check_l2 = verify_lower_bound_L2(w);
        rec.lower_c = 0.5 * rec.check_c.bound;
        rec.lower_l2 = rec.check_l2.bound;
        auto skew_endpoint = [&](WitnessSelection selection) -> std::optional<double> {
            try
            {
                return verify_lower_bound_C(build_witness_pair(N, cfg.r1, cfg.r2, cfg.cls, excluded, selection))
                    .measured;
            }
            catch (const InfeasibilityError&)
            {
                return std::nullopt;
            }
        };
        rec.endpoint_even_skew = skew_endpoint(WitnessSelection::even_skew);
        rec.endpoint_odd_skew = skew_endpoint(WitnessSelection::odd_skew);

        NoiseSpec spec;
        spec.p = cfg.p;
        spec.delta = std::min(rec.delta, std::nextafter(1.0, 0.0));
        spec.mode = NoiseMode::adversarial_witness;

        const MethodParams params{rec.n_used > 0.0 ? rec.n_used : 1e-300, rec.gamma, cfg.r1, cfg.r2};
        const CoeffGrid d1 = mixed_derivative_coeffs(w.f1(), cfg.r1, cfg.r2);
        const CoeffGrid d2 = mixed_derivative_coeffs(w.f2(), cfg.r1, cfg.r2);
        // f1 observed as f2, and f2 observed as f1
        const CoeffGrid err1 = d1 - apply_method(perturb(w.f1(), spec, w, WitnessRole::first).observed, params);
        const CoeffGrid err2 = d2 - apply_method(perturb(w.f2(), spec, w, WitnessRole::second).observed, params);
        rec.method_error_l2 = std::max(parseval_l2_norm(err1), parseval_l2_norm(err2));
        rec.method_error_c = std::max(sup_of(err1), sup_of(err2));

        report.lower_below_method = report.lower_below_method && rec.lower_c <= rec.method_error_c &&
                                    rec.lower_l2 <= rec.method_error_l2;
        report.records.push_back(std::move(rec));
    }

    auto fit_over = [&report](auto member) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : report.records)
            pts.emplace_back(static_cast<double>(r.N), member(r));
        return pts.size() >= 2 ? fit_rate(pts) : RateFit{};
    };
    report.fit_lower_c = fit_over([](const RadiusRecord& r) { return r.lower_c; });
    report.fit_lower_l2 = fit_over([](const RadiusRecord& r) { return r.lower_l2; });
    report.fit_method_c = fit_over([](const RadiusRecord& r) { return r.method_error_c; });
    report.fit_method_l2 = fit_over([](const RadiusRecord& r) { return r.method_error_l2; });
    report.exponents_agree =
        std::abs(report.fit_method_c.slope - report.fit_lower_c.slope) <= kRadiusExponentTolerance &&
        std::abs(report.fit_method_l2.slope - report.fit_lower_l2.slope) <= kRadiusExponentTolerance;
    return report;
}

} // namespace hcdiff
