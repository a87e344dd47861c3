#include "hcdiff/report.hpp"

#include "hcdiff/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace hcdiff
{

using nlohmann::json;

std::string fnv1a_hex(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data)
    {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string RunManifest::hash() const
{
    return fnv1a_hex(std::string(kToolVersion) + '\n' + config_echo + '\n' + std::string(kRngAlgorithm));
}

json RunManifest::to_json() const
{
    json j{
        {"tool", kToolName},
        {"version", kToolVersion},
        {"command", command},
        {"rng", kRngAlgorithm},
        {"config", config_echo},
        {"hash", hash()},
    };
    j["timestamp"] = timestamp ? json(*timestamp) : json(nullptr);
    j["outputs"] = outputs;
    return j;
}

json p_to_json(double p)
{
    return std::isinf(p) ? json("inf") : json(p);
}

std::string experiment_csv(const ExperimentResult& result)
{
    std::ostringstream out;
    out << "delta,n,gamma,cross_card,error_l2,error_c,noise_norm,wall_ms\n";
    for (const auto& r : result.records)
        out << format_double(r.delta) << ',' << format_double(r.n) << ',' << format_double(r.gamma) << ','
            << r.cross_cardinality << ',' << format_double(r.error_l2) << ',' << format_double(r.error_c) << ','
            << format_double(r.noise_norm) << ',' << format_double(r.wall_ms) << '\n';
    return out.str();
}

namespace
{
json fit_json(const std::optional<RateFit>& fit)
{
    if (!fit)
        return nullptr;
    return json{{"slope", fit->slope},
                {"intercept", fit->intercept},
                {"residual", fit->residual},
                {"points_used", fit->points_used}};
}

json fit_json(const RateFit& fit)
{
    return fit_json(std::optional<RateFit>(fit));
}

json optional_number(const std::optional<double>& x)
{
    return x ? json(*x) : json(nullptr);
}

json lower_bound_json(const LowerBoundReport& r)
{
    return json{{"measured", r.measured}, {"bound", r.bound}, {"passed", r.passed}};
}
} // namespace

json experiment_json(const ExperimentResult& result, const RunManifest& manifest)
{
    const auto& c = result.config;
    json records = json::array();
    for (const auto& r : result.records)
        records.push_back({{"delta", r.delta},
                           {"n", r.n},
                           {"gamma", r.gamma},
                           {"case", r.case_label},
                           {"cross_card", r.cross_cardinality},
                           {"error_l2", r.error_l2},
                           {"error_c", r.error_c},
                           {"noise_norm", r.noise_norm},
                           {"wall_ms", r.wall_ms}});
    return json{
        {"manifest", manifest.to_json()},
        {"parameters",
         {{"s", c.cls.s},
          {"mu", c.cls.mu},
          {"r1", c.r1},
          {"r2", c.r2},
          {"p", p_to_json(c.p)},
          {"metric", to_string(c.metric)},
          {"noise", to_string(c.noise_mode)},
          {"seed", c.seed},
          {"realizations", c.realizations},
          {"noise_support", result.noise_support},
          {"function", c.function_id},
          {"k_ref", c.k_ref}}},
        {"records", records},
        {"fitted_exponent_l2", result.fit_l2 ? json(result.fit_l2->slope) : json(nullptr)},
        {"fitted_exponent_c", result.fit_c ? json(result.fit_c->slope) : json(nullptr)},
        {"theoretical_exponent_l2", optional_number(result.theoretical_l2)},
        {"theoretical_exponent_c", optional_number(result.theoretical_c)},
        {"fit_l2", fit_json(result.fit_l2)},
        {"fit_c", fit_json(result.fit_c)},
    };
}

std::string experiment_svg(const ExperimentResult& result, const RunManifest& manifest)
{
    const bool use_l2 = result.config.metric != MetricSelection::c;
    const std::optional<double> theory = use_l2 ? result.theoretical_l2 : result.theoretical_c;
    const std::optional<RateFit>& fit = use_l2 ? result.fit_l2 : result.fit_c;

    std::vector<std::pair<double, double>> pts;
    for (const auto& r : result.records)
    {
        const double e = use_l2 ? r.error_l2 : r.error_c;
        if (r.delta > 0.0 && e > 0.0)
            pts.emplace_back(std::log10(r.delta), std::log10(e));
    }
    const double slope = theory ? *theory : (fit ? fit->slope : 0.0);

    constexpr double width = 600.0, height = 400.0, margin = 50.0;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"400\" viewBox=\"0 0 600 400\">\n"
        << "<!-- manifest " << manifest.hash() << " -->\n"
        << "<rect x=\"0\" y=\"0\" width=\"600\" height=\"400\" fill=\"white\"/>\n";

    double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1, cx = 0.5, cy = 0.5;
    if (!pts.empty())
    {
        x_lo = x_hi = pts.front().first;
        y_lo = y_hi = pts.front().second;
        cx = cy = 0.0;
        for (const auto& [x, y] : pts)
        {
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
            cx += x;
            cy += y;
        }
        cx /= static_cast<double>(pts.size());
        cy /= static_cast<double>(pts.size());
        y_lo = std::min(y_lo, cy + slope * (x_lo - cx));
        y_hi = std::max(y_hi, cy + slope * (x_hi - cx));
        y_lo = std::min(y_lo, cy + slope * (x_hi - cx));
        y_hi = std::max(y_hi, cy + slope * (x_lo - cx));
    }
    if (x_hi - x_lo < 1e-12)
        x_hi = x_lo + 1.0;
    if (y_hi - y_lo < 1e-12)
        y_hi = y_lo + 1.0;

    auto sx = [&](double x) { return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin); };
    auto sy = [&](double y) { return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2 * margin); };
    auto coord = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };

    svg << "<line x1=\"50\" y1=\"350\" x2=\"550\" y2=\"350\" stroke=\"black\"/>\n"
        << "<line x1=\"50\" y1=\"50\" x2=\"50\" y2=\"350\" stroke=\"black\"/>\n"
        << "<text x=\"300\" y=\"385\" text-anchor=\"middle\" font-size=\"12\">log10 delta</text>\n"
        << "<text x=\"15\" y=\"200\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 15 200)\">log10 "
        << (use_l2 ? "L2" : "C") << " error</text>\n";

    svg << "<polyline class=\"measured\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
        svg << (i ? " " : "") << coord(sx(pts[i].first)) << ',' << coord(sy(pts[i].second));
    svg << "\"/>\n";

    svg << "<polyline class=\"reference\" fill=\"none\" stroke=\"#d62728\" stroke-dasharray=\"6,4\" points=\""
        << coord(sx(x_lo)) << ',' << coord(sy(cy + slope * (x_lo - cx))) << ' ' << coord(sx(x_hi)) << ','
        << coord(sy(cy + slope * (x_hi - cx))) << "\"/>\n";
    svg << "<text x=\"60\" y=\"40\" font-size=\"12\">reference slope " << coord(slope)
        << (theory ? " (theory)" : " (fit)") << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

json radius_json(const RadiusReport& report, const RunManifest& manifest)
{
    const auto& c = report.config;
    json records = json::array();
    for (const auto& r : report.records)
        records.push_back({{"N", r.N},
                           {"delta", r.delta},
                           {"n_selected", r.n_selected},
                           {"n_used", r.n_used},
                           {"gamma", r.gamma},
                           {"cross_card", r.cross_cardinality},
                           {"selected_k", r.selected_k},
                           {"check_c", lower_bound_json(r.check_c)},
                           {"check_l2", lower_bound_json(r.check_l2)},
                           {"lower_c", r.lower_c},
                           {"lower_l2", r.lower_l2},
                           {"method_error_c", r.method_error_c},
                           {"method_error_l2", r.method_error_l2},
                           {"witness_distance", r.witness_distance},
                           {"endpoint_even_skew", optional_number(r.endpoint_even_skew)},
                           {"endpoint_odd_skew", optional_number(r.endpoint_odd_skew)}});
    bool all_passed = true;
    for (const auto& r : report.records)
        all_passed = all_passed && r.check_c.passed && r.check_l2.passed;
    return json{
        {"manifest", manifest.to_json()},
        {"parameters",
         {{"s", c.cls.s}, {"mu", c.cls.mu}, {"r1", c.r1}, {"r2", c.r2}, {"p", p_to_json(c.p)}, {"N", c.N_values}}},
        {"c_tilde", report.constants.c_tilde},
        {"c_bar", report.constants.c_bar},
        {"c_dbar", report.constants.c_dbar},
        {"records", records},
        {"all_checks_passed", all_passed},
        {"theoretical_exponent_c", report.theoretical_exponent_c},
        {"theoretical_exponent_l2", report.theoretical_exponent_l2},
        {"fit_lower_c", fit_json(report.fit_lower_c)},
        {"fit_lower_l2", fit_json(report.fit_lower_l2)},
        {"fit_method_c", fit_json(report.fit_method_c)},
        {"fit_method_l2", fit_json(report.fit_method_l2)},
        {"lower_below_method", report.lower_below_method},
        {"exponents_agree", report.exponents_agree},
    };
}

} // namespace hcdiff
