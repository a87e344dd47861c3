#include "hcdiff/error.hpp"
#include "hcdiff/lowerbound.hpp"
#include "hcdiff/noise.hpp"

#include <doctest.h>

#include <cmath>

using namespace hcdiff;
using doctest::Approx;

TEST_CASE("witness pair for N = 4")
{
    const ClassParams cls{2.0, 3.0};
    const WitnessPair w = build_witness_pair(4, 1, 1, cls);
    CHECK(w.constants().c_tilde == Approx(0.015623093000542114).epsilon(1e-14));
    CHECK(w.selected_k() == std::vector<int>{5, 6, 7, 8});
    CHECK(w.f2() == CoeffGrid{{{0, 0}, w.constants().c_tilde}});
    CHECK(w.f1().size() == 5);
    for (int k = 5; k <= 8; ++k)
        CHECK(w.f1().at(k, 1) == Approx(1.2205541406673526e-4).epsilon(1e-13));

    const WitnessPair shifted = build_witness_pair(4, 1, 1, cls, {{5, 1}});
    CHECK(shifted.selected_k() == std::vector<int>{6, 7, 8, 9});
}

TEST_CASE("witness constants")
{
    const WitnessConstants c = witness_constants(1, 1, ClassParams{2.0, 3.0});
    CHECK(c.c_bar == Approx(0.0095671515138438932).epsilon(1e-14));
    CHECK(c.c_dbar == Approx(0.0067649977120781602).epsilon(1e-14));
}

TEST_CASE("witness feasibility and parameter checks")
{
    const ClassParams cls{2.0, 3.0};
    std::set<IndexPair> blocked;
    for (int k = 5; k <= 12; ++k)
        blocked.insert({k, 1});
    CHECK_THROWS_AS(build_witness_pair(4, 1, 1, cls, blocked), InfeasibilityError);
    blocked.erase({12, 1});
    CHECK_THROWS_AS(build_witness_pair(4, 1, 1, cls, blocked), InfeasibilityError);
    CHECK_THROWS_AS(build_witness_pair(0, 1, 1, cls), ParameterError);
    CHECK_THROWS_AS(build_witness_pair(4, 1, 2, cls), ParameterError);

    // excluded indices off the band row do not matter
    CHECK(build_witness_pair(4, 1, 1, cls, {{5, 2}, {0, 0}}).selected_k() == std::vector<int>{5, 6, 7, 8});
}

TEST_CASE("witness distance")
{
    const ClassParams cls{2.0, 3.0};
    const WitnessPair w = build_witness_pair(4, 1, 1, cls);
    CHECK(witness_lp_distance(w, 2.0) == Approx(2.4411082813347053e-4).epsilon(1e-13));
    const double sup = witness_lp_distance(w, kInfinity);
    CHECK(sup == Approx(w.constants().c_tilde * std::pow(4.0, -3.5)).epsilon(1e-14));
    CHECK(witness_lp_distance(w, 1.0) == Approx(4.0 * sup).epsilon(1e-14));
}

TEST_CASE("witness properties across parameters")
{
    for (int r1 : {1, 2})
        for (int r2 : {1, r1})
            for (double s : {1.0, 2.0})
            {
                const ClassParams cls{s, 2.0 * r1 + 2.0};
                for (int N : {8, 16, 32, 64})
                {
                    std::set<IndexPair> excluded;
                    for (int k = 0; k < N; ++k)
                        excluded.insert({N + r1 + 2 * k, r2});
                    for (const auto& ex : std::vector<std::set<IndexPair>>{{}, excluded})
                    {
                        const WitnessPair w = build_witness_pair(N, r1, r2, cls, ex);
                        CHECK(class_norm(w.f1(), cls) <= 1.0);
                        CHECK(class_norm(w.f2(), cls) <= 1.0);
                        for (const auto& idx : ex)
                            CHECK(w.f1().at(idx.first, idx.second) == w.f2().at(idx.first, idx.second));
                        for (double p : {1.0, 2.0, kInfinity})
                            CHECK(witness_lp_distance(w, p) ==
                                  Approx(witness_lp_distance_closed_form(w, p)).epsilon(1e-12));
                        CHECK(verify_lower_bound_C(w).passed);
                        CHECK(verify_lower_bound_L2(w).passed);
                    }
                }
            }
}

TEST_CASE("lower bound checks for first derivatives")
{
    const ClassParams cls{2.0, 3.0};
    for (int N : {8, 16, 32, 64})
    {
        const WitnessPair w = build_witness_pair(N, 1, 1, cls);
        const LowerBoundReport c = verify_lower_bound_C(w);
        const LowerBoundReport l2 = verify_lower_bound_L2(w);
        CHECK(c.passed);
        CHECK(l2.passed);
        CHECK(c.measured / c.bound <= 10.0);
        CHECK(c.bound == Approx(0.0095671515138438932).epsilon(1e-13)); // exponent is 0 here
        CHECK(l2.bound == Approx(0.0067649977120781602 / N).epsilon(1e-13));
    }
}

TEST_CASE("f2 has zero mixed derivative")
{
    const WitnessPair w = build_witness_pair(8, 1, 1, ClassParams{2.0, 3.0});
    const CoeffGrid d = mixed_derivative_coeffs(w.f2(), 1, 1);
    CHECK(d.empty());
    CHECK(synth_eval(d, 1.0, 1.0) == 0.0);
    CHECK(parseval_l2_norm(d) == 0.0);
}

TEST_CASE("L2 lower bound is linear in the band values")
{
    const WitnessPair w = build_witness_pair(8, 2, 1, ClassParams{2.0, 6.0});
    const CoeffGrid band = mixed_derivative_coeffs(w.difference(), 2, 1);
    const CoeffGrid doubled = mixed_derivative_coeffs(2.0 * w.difference(), 2, 1);
    CHECK(parseval_l2_norm(doubled) == Approx(2.0 * parseval_l2_norm(band)).epsilon(1e-14));
    CHECK(verify_lower_bound_L2(w).measured == Approx(parseval_l2_norm(band)).epsilon(1e-14));
}

TEST_CASE("indistinguishability threshold")
{
    const ClassParams cls{2.0, 3.0};
    const double delta = delta_for_N(16, 2.0, cls, 1);
    CHECK(min_N_for_delta(delta, 2.0, cls, 1) == Approx(16.0).epsilon(1e-12));
    const WitnessPair w = build_witness_pair(16, 1, 1, cls);
    CHECK(witness_lp_distance(w, 2.0) <= delta * (1.0 + 1e-12));

    CHECK(min_N_for_delta(1e-12, 2.0, cls, 1) > min_N_for_delta(1e-6, 2.0, cls, 1));
    CHECK(min_N_for_delta(1e-30, 2.0, cls, 1) > 1e5);

    // below c_tilde / r2^mu the l1 threshold is the larger one
    for (double d : {1e-4, 1e-6, 1e-9})
        CHECK(min_N_for_delta(d, 1.0, cls, 1) >= min_N_for_delta(d, kInfinity, cls, 1));
}

TEST_CASE("parity-skewed witness selections")
{
    const ClassParams cls{2.0, 3.0};
    const WitnessPair even = build_witness_pair(8, 1, 1, cls, {}, WitnessSelection::even_skew);
    CHECK(even.selected_k() == std::vector<int>{10, 12, 14, 16, 18, 20, 22, 24});
    const WitnessPair odd = build_witness_pair(8, 1, 1, cls, {}, WitnessSelection::odd_skew);
    CHECK(odd.selected_k() == std::vector<int>{9, 11, 13, 15, 17, 19, 21, 23});

    // with two even indices excluded the even-skew choice fills up with the smallest odd ones
    const WitnessPair filled = build_witness_pair(8, 1, 1, cls, {{10, 1}, {12, 1}}, WitnessSelection::even_skew);
    CHECK(filled.selected_k() == std::vector<int>{9, 11, 14, 16, 18, 20, 22, 24});

    for (const WitnessPair* w : {&even, &odd, &filled})
    {
        CHECK(class_norm(w->f1(), cls) <= 1.0);
        CHECK(witness_lp_distance(*w, 2.0) == Approx(witness_lp_distance_closed_form(*w, 2.0)).epsilon(1e-12));
        CHECK(verify_lower_bound_C(*w).passed);
        CHECK(verify_lower_bound_L2(*w).passed);
    }
    CHECK(to_string(WitnessSelection::odd_skew) == "odd-skew");
}
