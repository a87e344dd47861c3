#include "hcdiff/lowerbound.hpp"

#include "hcdiff/error.hpp"
#include "hcdiff/noise.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hcdiff
{

namespace
{
double factorial(int n)
{
    double f = 1.0;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}
} // namespace

WitnessConstants witness_constants(int r1, int r2, const ClassParams& params)
{
    params.validate();
    if (r1 < 1 || r2 < 1)
        throw ParameterError("derivative orders must be positive");

    const double s = params.s;
    const double mu = params.mu;
    WitnessConstants c;
    c.c_tilde = std::pow(1.0 + std::pow(4.0, s * mu), -1.0 / s);
    const double common = c.c_tilde * std::sqrt(r2 + 0.5) / std::pow(static_cast<double>(r2), mu) *
                          factorial(2 * r2) / factorial(r2);
    c.c_bar = common / std::pow(2.0, r1 + r2) / factorial(r1);
    c.c_dbar = common / std::pow(2.0, 3.0 * r1 + r2 - 1.5) / factorial(r1 - 1);
    return c;
}

CoeffGrid WitnessPair::difference() const
{
    return f1_ - f2_;
}

std::string_view to_string(WitnessSelection s)
{
    switch (s)
    {
    case WitnessSelection::smallest:
        return "smallest";
    case WitnessSelection::even_skew:
        return "even-skew";
    case WitnessSelection::odd_skew:
        return "odd-skew";
    }
    return "unknown";
}

WitnessPair build_witness_pair(int N, int r1, int r2, const ClassParams& params, const std::set<IndexPair>& excluded,
                               WitnessSelection selection)
{
    params.validate();
    if (N < 1)
        throw ParameterError("witness size N must be positive");
    if (r1 < 1 || r2 < 1 || r1 < r2)
        throw ParameterError("witness requires r1 >= r2 >= 1");

    WitnessPair w;
    w.n_ = N;
    w.r1_ = r1;
    w.r2_ = r2;
    w.params_ = params;
    w.constants_ = witness_constants(r1, r2, params);
    w.band_value_ = w.constants_.c_tilde * std::pow(static_cast<double>(N), -params.mu - 1.0 / params.s) *
                    std::pow(static_cast<double>(r2), -params.mu);

    std::vector<int> admissible;
    for (int k = N + r1; k <= 3 * N + r1; ++k)
        if (!excluded.contains({k, r2}))
            admissible.push_back(k);
    if (selection != WitnessSelection::smallest)
    {
        const int preferred = selection == WitnessSelection::even_skew ? 0 : 1;
        std::stable_partition(admissible.begin(), admissible.end(), [&](int k) { return k % 2 == preferred; });
    }
    admissible.resize(std::min(admissible.size(), static_cast<std::size_t>(N)));
    std::sort(admissible.begin(), admissible.end());
    w.selected_k_ = std::move(admissible);
    if (static_cast<int>(w.selected_k_.size()) < N)
        throw InfeasibilityError("only " + std::to_string(w.selected_k_.size()) + " admissible indices in band [" +
                                 std::to_string(N + r1) + ", " + std::to_string(3 * N + r1) + "] x {" +
                                 std::to_string(r2) + "}, need N = " + std::to_string(N));

    w.f2_.set(0, 0, w.constants_.c_tilde);
    w.f1_ = w.f2_;
    for (int k : w.selected_k_)
        w.f1_.set(k, r2, w.band_value_);
    return w;
}

double witness_lp_distance(const WitnessPair& w, double p)
{
    return lp_norm(w.difference(), p);
}

double witness_lp_distance_closed_form(const WitnessPair& w, double p)
{
    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    const auto& prm = w.params();
    return w.constants().c_tilde * std::pow(static_cast<double>(w.r2()), -prm.mu) *
           std::pow(static_cast<double>(w.N()), -prm.mu - 1.0 / prm.s + inv_p);
}

LowerBoundReport verify_lower_bound_C(const WitnessPair& w)
{
    const auto& prm = w.params();
    const CoeffGrid derivative = mixed_derivative_coeffs(w.f1(), w.r1(), w.r2());
    LowerBoundReport report;
    report.measured = std::abs(synth_eval(derivative, 1.0, 1.0));
    report.bound = w.constants().c_bar *
                   std::pow(static_cast<double>(w.N()), -prm.mu + 2.0 * w.r1() - 1.0 / prm.s + 1.5);
    report.passed = report.measured >= report.bound;
    return report;
}

LowerBoundReport verify_lower_bound_L2(const WitnessPair& w)
{
    const auto& prm = w.params();
    const CoeffGrid derivative = mixed_derivative_coeffs(w.f1(), w.r1(), w.r2());
    LowerBoundReport report;
    report.measured = parseval_l2_norm(derivative);
    report.bound = w.constants().c_dbar *
                   std::pow(static_cast<double>(w.N()), -prm.mu + 2.0 * w.r1() - 1.0 / prm.s + 0.5);
    report.passed = report.measured >= report.bound;
    return report;
}

double min_N_for_delta(double delta, double p, const ClassParams& params, int r2)
{
    params.validate();
    if (!(delta > 0.0 && delta < 1.0))
        throw ParameterError("delta must lie in (0, 1)");
    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    const double c_tilde = witness_constants(r2, r2, params).c_tilde;
    const double base = std::pow(static_cast<double>(r2), params.mu) * delta / c_tilde;
    return std::pow(base, -1.0 / (params.mu + 1.0 / params.s - inv_p));
}

double delta_for_N(double N, double p, const ClassParams& params, int r2)
{
    params.validate();
    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    const double c_tilde = witness_constants(r2, r2, params).c_tilde;
    return c_tilde * std::pow(static_cast<double>(r2), -params.mu) *
           std::pow(N, -(params.mu + 1.0 / params.s - inv_p));
}

} // namespace hcdiff
