#include "hcdiff/harness.hpp"
#include "hcdiff/quadrature.hpp"
#include "hcdiff/registry.hpp"
#include "hcdiff/truncation.hpp"

#include <doctest.h>

#include <cmath>

using namespace hcdiff;

namespace
{
// max |g| over a uniform grid and the L2 norm by quadrature, for g = a - b
std::pair<double, double> distance(const BivariateFunction& a, const BivariateFunction& b)
{
    const BivariateFunction diff = [&](double t, double tau) { return a(t, tau) - b(t, tau); };
    double sup = 0.0;
    for (int i = 0; i <= 100; ++i)
        for (int j = 0; j <= 100; ++j)
            sup = std::max(sup, std::abs(diff(-1.0 + i / 50.0, -1.0 + j / 50.0)));
    return {l2_norm_quadrature(diff, 24), sup};
}
} // namespace

TEST_CASE("method is exact on the registry polynomial")
{
    const auto poly = find_function("polynomial");
    REQUIRE(poly.has_value());
    const CoeffGrid c = compute_coeff_grid(poly->f, 8);
    for (auto [r1, r2] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}})
    {
        const CoeffGrid d = apply_method(c, MethodParams{64.0, 1.0, r1, r2});
        const auto [l2, sup] = distance([&](double t, double tau) { return synth_eval(d, t, tau); },
                                        poly->derivative(r1, r2));
        CHECK(l2 < 1e-10);
        CHECK(sup < 1e-10);
    }
}

TEST_CASE("covering cross reproduces the reference derivative")
{
    const ClassParams cls{2.0, 4.0};
    for (int k_ref : {8, 24})
    {
        const CoeffGrid c = synthesize_class_function(cls, SyntheticProfile{0.01, k_ref, std::nullopt}, 3);
        for (auto [r1, r2] : {std::pair{1, 1}, std::pair{2, 1}})
        {
            const double n = double(k_ref) * k_ref;
            const CoeffGrid approx = apply_method(c, MethodParams{n, 1.0, r1, r2});
            const CoeffGrid reference = mixed_derivative_coeffs(c, r1, r2);
            CHECK(parseval_l2_norm(reference - approx) <= 1e-12 * parseval_l2_norm(reference));
        }
    }
}

TEST_CASE("exp registry function: derivative converges fast")
{
    const auto fn = find_function("exp");
    REQUIRE(fn.has_value());
    const CoeffGrid c = compute_coeff_grid(fn->f, 20);
    const CoeffGrid d = apply_method(c, MethodParams{400.0, 1.0, 1, 1});
    const auto [l2, sup] =
        distance([&](double t, double tau) { return synth_eval(d, t, tau); }, fn->derivative(1, 1));
    CHECK(l2 < 1e-9);
    CHECK(sup < 1e-9);
}

TEST_CASE("registry")
{
    const auto ids = function_ids();
    CHECK(std::find(ids.begin(), ids.end(), "synthetic") != ids.end());
    CHECK(std::find(ids.begin(), ids.end(), "polynomial") != ids.end());
    CHECK(std::find(ids.begin(), ids.end(), "exp") != ids.end());
    CHECK_FALSE(find_function("synthetic").has_value());
    CHECK_FALSE(find_function("nope").has_value());
    const auto poly = find_function("polynomial");
    // d^2/dt dtau of t^5 tau^4 + 3 t^3 tau^2 + 0.5 t^2 tau^3 - t tau + 2 at (0.5, -0.5)
    const double t = 0.5, tau = -0.5;
    const double expected = 20 * std::pow(t, 4) * std::pow(tau, 3) + 18 * t * t * tau + 3 * t * tau * tau - 1;
    CHECK(poly->derivative(1, 1)(t, tau) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("same config, same records")
{
    ExperimentConfig cfg;
    cfg.k_ref = 96;
    cfg.realizations = 2;
    const ExperimentResult a = run_convergence_study(cfg);
    const ExperimentResult b = run_convergence_study(cfg);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i)
    {
        CHECK(a.records[i].error_l2 == b.records[i].error_l2);
        CHECK(a.records[i].error_c == b.records[i].error_c);
        CHECK(a.records[i].noise_norm == b.records[i].noise_norm);
        CHECK(a.records[i].wall_ms == 0.0);
    }
}
