#include "hcdiff/error.hpp"
#include "hcdiff/truncation.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hcdiff;
using doctest::Approx;

namespace
{
SelectionInput input(double delta, double p, double s, double mu, int r1, int r2, Metric metric)
{
    SelectionInput in;
    in.delta = delta;
    in.p = p;
    in.cls = ClassParams{s, mu};
    in.r1 = r1;
    in.r2 = r2;
    in.metric = metric;
    return in;
}
} // namespace

TEST_CASE("apply_method")
{
    const CoeffGrid out = apply_method(CoeffGrid{{{1, 1}, 1.0}}, MethodParams{1, 1, 1, 1});
    CHECK(out.size() == 1);
    CHECK(out.at(0, 0) == Approx(3.0).epsilon(1e-15));

    CHECK(apply_method(CoeffGrid{{{9, 9}, 1.0}, {{0, 3}, 2.0}}, MethodParams{10, 1, 1, 1}).empty());

    CoeffGrid poly;
    for (int k = 0; k <= 4; ++k)
        for (int j = 0; j <= 3; ++j)
            poly.set(k, j, 1.0 + k - 0.5 * j);
    CHECK(apply_method(poly, MethodParams{12, 1, 1, 1}) == mixed_derivative_coeffs(poly, 1, 1));
    CHECK(apply_method(poly, MethodParams{4 * 9, 2, 2, 1}) == mixed_derivative_coeffs(poly, 2, 1));

    CHECK_THROWS_AS(apply_method(poly, MethodParams{10, 1, 1, 2}), ParameterError);
    CHECK_THROWS_AS(apply_method(poly, MethodParams{10, 0.5, 1, 1}), ParameterError);
    CHECK_THROWS_AS(apply_method(poly, MethodParams{0, 1, 1, 1}), ParameterError);
}

TEST_CASE("error splits into truncation and noise parts")
{
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    CoeffGrid c, noisy;
    for (int k = 0; k <= 20; ++k)
        for (int j = 0; j <= 20; ++j)
        {
            const double v = coef(gen) / ((1.0 + k) * (1.0 + j));
            c.set(k, j, v);
            noisy.set(k, j, v + 1e-3 * coef(gen));
        }
    const MethodParams params{30, 1.3, 2, 1};
    const CoeffGrid exact = mixed_derivative_coeffs(c, 2, 1);
    const CoeffGrid truncation = apply_method(c, params) - exact;
    const CoeffGrid propagation = apply_method(noisy, params) - apply_method(c, params);
    const CoeffGrid total = apply_method(noisy, params) - exact;
    const CoeffGrid recombined = truncation + propagation;
    double worst = 0.0, scale = 0.0;
    for (const auto& [idx, v] : total)
    {
        worst = std::max(worst, std::abs(recombined.at(idx.first, idx.second) - v));
        scale = std::max(scale, std::abs(v));
    }
    CHECK(worst <= 1e-13 * scale);
}

TEST_CASE("admissibility")
{
    CHECK_NOTHROW(check_admissibility(input(1e-3, 2, 2, 2.01, 1, 1, Metric::l2)));
    CHECK_THROWS_AS(check_admissibility(input(1e-3, 2, 2, 2.0, 1, 1, Metric::l2)), AdmissibilityError);
    CHECK_NOTHROW(check_admissibility(input(1e-3, 2, 2, 3.01, 1, 1, Metric::c)));
    CHECK_THROWS_AS(check_admissibility(input(1e-3, 2, 2, 3.0, 1, 1, Metric::c)), AdmissibilityError);
    try
    {
        check_admissibility(input(1e-3, 2, 2, 1.0, 1, 1, Metric::c));
        FAIL("expected an admissibility error");
    }
    catch (const AdmissibilityError& e)
    {
        CHECK(std::string(e.what()).find("mu > 2*r1 - 1/s + 3/2 = 3") != std::string::npos);
    }
}

TEST_CASE("select_parameters examples")
{
    const Selection equal = select_parameters(input(1e-5, 2, 2, 5, 1, 1, Metric::l2));
    CHECK(equal.gamma == 1.0);
    CHECK(equal.n == Approx(10.0).epsilon(1e-13));
    CHECK(equal.case_label == "l2/equal-orders");

    const Selection unequal = select_parameters(input(1e-4, 2, 2, 6, 2, 1, Metric::l2));
    CHECK(unequal.n == Approx(4.6415888336127789).epsilon(1e-13));
    CHECK(unequal.gamma == Approx(7.0 / 6.0).epsilon(1e-15));

    CHECK_THROWS_AS(select_parameters(input(1e-3, 2, 2, 1, 1, 1, Metric::l2)), AdmissibilityError);
    CHECK_THROWS_AS(select_parameters(input(1.0, 2, 2, 5, 1, 1, Metric::l2)), ParameterError);
}

TEST_CASE("equal orders with p != s carry a log factor in n")
{
    // n = (delta / L^(1/p - 1/s))^(-1/(mu - 1/p + 1/s)), L = ln(1/delta)
    const double delta = 1e-4;
    const Selection sel = select_parameters(input(delta, 1, 2, 5, 1, 1, Metric::l2));
    const double L = std::log(1.0 / delta);
    CHECK(sel.n == Approx(std::pow(delta / std::pow(L, 0.5), -1.0 / 4.5)).epsilon(1e-13));
    CHECK(clamped_log(0.9) == 1.0);
}

TEST_CASE("gamma intervals for unequal orders in L2")
{
    const auto iv = gamma_intervals(input(1e-3, 2, 2, 6, 2, 1, Metric::l2));
    REQUIRE(iv.size() == 6);
    CHECK(iv[0].lo == 1.0);
    CHECK(iv[0].lo_closed);
    CHECK(iv[0].hi == Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(iv[0].rate == RateClass::clean);
    CHECK(iv[1].is_point());
    CHECK(iv[1].rate == RateClass::log_sqrt);
    CHECK(iv[2].hi == Approx(5.0 / 3.0).epsilon(1e-15));
    CHECK(iv[3].rate == RateClass::log_one_minus_inv_s);
    CHECK(iv[4].hi == Approx(2.0).epsilon(1e-15));
    CHECK(iv[5].lo == Approx(2.0).epsilon(1e-15));
    CHECK(iv[5].rate == RateClass::log_sqrt);

    // intervals tile [1, 2] without overlap
    for (double g = 1.0; g <= 2.0; g += 1.0 / 97.0)
    {
        int hits = 0;
        for (const auto& i : iv)
            hits += i.contains(g);
        CHECK(hits == 1);
    }
}

TEST_CASE("gamma intervals in C")
{
    const auto adjacent = gamma_intervals(input(1e-3, 2, 2, 7, 2, 1, Metric::c));
    REQUIRE(adjacent.size() == 5);
    CHECK(adjacent[0].is_point());
    CHECK(adjacent[0].rate == RateClass::log);
    // D = mu - 2 r1 + 1/s = 3.5
    CHECK(adjacent[2].lo == Approx(6.0 / 4.0).epsilon(1e-15));
    CHECK(adjacent[4].lo == Approx(4.0 / 2.0).epsilon(1e-15));

    const auto separated = gamma_intervals(input(1e-3, 2, 2, 9, 3, 1, Metric::c));
    REQUIRE(separated.size() == 6);
    // A = 9 - 2 + 0.5 = 7.5, D = 9 - 6 + 0.5 = 3.5
    CHECK(separated[0].hi == Approx(6.0 / 4.0).epsilon(1e-15));
    CHECK(separated[2].hi == Approx(8.0 / 4.0).epsilon(1e-15));
    CHECK(separated[4].hi == Approx(6.0 / 2.0).epsilon(1e-15));

    const auto equal = gamma_intervals(input(1e-3, 2, 2, 5, 1, 1, Metric::c));
    REQUIRE(equal.size() == 1);
    CHECK(equal[0].lo == 1.0);
}

TEST_CASE("forced gamma")
{
    SelectionInput in = input(1e-4, 2, 2, 6, 2, 1, Metric::l2);
    in.gamma_override = 1.5;
    const Selection clean = select_parameters(in);
    CHECK(clean.gamma == 1.5);
    CHECK(clean.n == Approx(std::pow(1e-4, -1.0 / 6.0)).epsilon(1e-13));

    in.gamma_override = 4.0 / 3.0;
    const Selection point = select_parameters(in);
    CHECK(point.case_label.find("log-sqrt-point") != std::string::npos);
    CHECK(point.n == Approx(std::pow(1e-4 / std::sqrt(std::log(1e4)), -1.0 / 6.0)).epsilon(1e-13));

    in.gamma_override = 2.5;
    CHECK_THROWS_AS(select_parameters(in), AdmissibilityError);
}

TEST_CASE("selection invariants")
{
    for (auto [mu, r1, r2] : {std::tuple{5.0, 1, 1}, std::tuple{6.0, 2, 1}, std::tuple{9.0, 3, 1}})
        for (Metric metric : {Metric::l2, Metric::c})
        {
            double previous = 0.0;
            for (double delta = 0.5; delta > 1e-12; delta /= 3.7)
            {
                const SelectionInput in = input(delta, 2, 2, mu, r1, r2, metric);
                const Selection sel = select_parameters(in);
                CHECK(sel.n >= previous);
                previous = sel.n;
                bool in_clean = false;
                for (const auto& iv : gamma_intervals(in))
                    in_clean = in_clean || (iv.rate == RateClass::clean && iv.contains(sel.gamma));
                CHECK((in_clean || r1 == r2));
            }
        }
}

TEST_CASE("theoretical exponents")
{
    CHECK(theoretical_error_exponent(input(1e-3, 2, 2, 4, 1, 1, Metric::l2)) == Approx(0.5).epsilon(1e-15));
    CHECK(theoretical_error_exponent(input(1e-3, 2, 2, 4, 1, 1, Metric::c)) == Approx(0.25).epsilon(1e-15));
    CHECK(theoretical_error_exponent(input(1e-3, 2, 2, 6, 2, 1, Metric::l2)) == Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(theoretical_error_exponent(input(1e-3, 2, 2, 6, 1, 1, Metric::l2)) >
          theoretical_error_exponent(input(1e-3, 2, 2, 4, 1, 1, Metric::l2)));
}
